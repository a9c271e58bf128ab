//! Built-in consistency suites run by `alpharep selftest`.

use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphasum::{
    cancellation_check, eval_main1, eval_main3, term_main3, EnumOptions, Main3Method, SearchMode, SubsetSearch,
};
use crate::error::Result;
use crate::fqlin::{gauss_sum_closed, gauss_sum_direct, FqMatrix};
use crate::gf::{FieldCtx, FqElem};
use crate::instances;
use crate::matroid::{chi_whitney, flow_count, AlphaVector, RepresentedMatroid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let t = Instant::now();
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check { name: name.into(), passed, detail, seconds: t.elapsed().as_secs_f64() });
    }
}

fn field(p: u32, d: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, d).expect("valid field"))
}

pub fn run(level: Level, workers: usize) -> Report {
    let full = level == Level::Full;
    let opts = EnumOptions::with_workers(workers);
    let mut report = Report::default();

    report.run("gauss sums: closed form equals direct summation", || {
        let random = if full { 100 } else { 20 };
        let mut n = 0;
        for p in [3u32, 5] {
            let f = field(p, 1);
            for (a, b, c) in (0..p).cartesian_product(0..p).cartesian_product(0..p).map(|((a, b), c)| (a, b, c)) {
                let m = FqMatrix::from_int_rows(f.clone(), &[vec![a as i64, b as i64], vec![b as i64, c as i64]])?;
                if gauss_sum_closed(&m)?.value() != gauss_sum_direct(&m, 1 << 20)? {
                    return Ok((false, format!("2x2 {a} {b} {c} over F_{p}")));
                }
                n += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (p, d) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let f = field(p, d);
            for _ in 0..random {
                let m = FqMatrix::random_symmetric(f.clone(), 3, &mut rng);
                if gauss_sum_closed(&m)?.value() != gauss_sum_direct(&m, 1 << 20)? {
                    return Ok((false, format!("random 3x3 over F_{}", f.q())));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} matrices")))
    });

    report.run("flows: nowhere-zero kernel vectors match the dual characteristic polynomial", || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, d) in [(3, 1), (5, 1), (3, 2)] {
            let f = field(p, d);
            for _ in 0..5 {
                let m = RepresentedMatroid::from_matrix_unlabeled(FqMatrix::random(f.clone(), 2, 5, &mut rng))?;
                let flows = flow_count(&m, 1 << 20)? as i128;
                if flows != chi_whitney(&m.dual(), f.q() as i64)? {
                    return Ok((false, format!("over F_{}", f.q())));
                }
            }
        }
        Ok((true, "15 random matrices".into()))
    });

    report.run("odd-rank Gauss sums cancel", || {
        let mut cases = vec![("U_{2,4} over F_3", instances::u24(field(3, 1)))];
        if full {
            cases.push(("prism over F_3", instances::prism_matroid(field(3, 1))));
        }
        for (name, m) in &cases {
            let s = cancellation_check(m, &EnumOptions { budget: u64::MAX, ..opts })?;
            if !s.is_zero() {
                return Ok((false, format!("{name}: {s}")));
            }
        }
        Ok((true, cases.iter().map(|c| c.0).join(", ")))
    });

    report.run("per-term independence of the representation", || {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        let trials = if full { 50 } else { 10 };
        for t in 0..trials {
            let p = [3u32, 5, 7][t % 3];
            let f = field(p, 1);
            let m = RepresentedMatroid::from_matrix_unlabeled(FqMatrix::random(f.clone(), 3, 6, &mut rng))?;
            let pm = FqMatrix::random_invertible(f.clone(), m.rank(), &mut rng);
            let moved = m.transformed(&pm)?;
            let vals: Vec<FqElem> = (0..6).map(|_| f.prime_elem(rng.gen_range(1..p))).collect();
            let alpha = AlphaVector::new(f, vals)?;
            if term_main3(&m, &alpha)? != term_main3(&moved, &alpha)? {
                return Ok((false, format!("trial {t}")));
            }
        }
        Ok((true, format!("{trials} triples")))
    });

    report.run("restricted A* search agrees with the full search", || {
        let (m, f) = if full {
            (instances::prism_matroid(field(3, 1)), field(3, 1))
        } else {
            (instances::k4_matroid(field(3, 1)), field(3, 1))
        };
        let search = SubsetSearch::restrictions(&m)?;
        let bases = m.bases();
        let picks = [0, bases.len() / 2, bases.len() - 1];
        crate::alphasum::fold_alphas(&f, m.len(), &opts, || (), |_, a| {
            let t = search.term(&f, a);
            for &i in &picks {
                if search.term_restricted(&f, a, &bases[i])? != t {
                    return Err(crate::Error::Contract(format!("base {:?}", bases[i])));
                }
            }
            Ok(())
        })?;
        let count = (f.q() as u64 - 1).pow(m.len() as u32);
        Ok((true, format!("{count} weight vectors, 3 bases")))
    });

    report.run("chromatic values match the Whitney expansion", || {
        let graphs: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (3, vec![(1, 2), (2, 3), (1, 3)]),
            (4, vec![(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]),
            (4, instances::K4_EDGES.to_vec()),
        ];
        for p in [3u32, 5] {
            let f = field(p, 1);
            for (n, e) in &graphs {
                let m = RepresentedMatroid::from_graph(f.clone(), *n, e)?;
                let got = eval_main1(&m, &f, &SearchMode::Full, &opts)?.value;
                let want = chi_whitney(&m, p as i64)?;
                if got != Ratio::from_integer(want) {
                    return Ok((false, format!("{e:?} at q={p}: {got} vs {want}")));
                }
                let flows = eval_main3(&m, Main3Method::Laplacian, &opts)?.value;
                if flows != Ratio::from_integer(flow_count(&m, 1 << 20)? as i128) {
                    return Ok((false, format!("{e:?} flows at q={p}")));
                }
            }
        }
        Ok((true, "3 graphs, q in {3, 5}".into()))
    });

    if full {
        report.run("prism: 512 weight vectors over F_3", || {
            let f = field(3, 1);
            let s = eval_main1(&instances::prism_matroid(f.clone()), &f, &SearchMode::Full, &opts)?;
            let t = &s.tally;
            let got = (t.count(4, 1), t.count(4, -1), t.count(2, 1), t.count(2, -1));
            let ok = got == (186, 162, 6, 10) && s.value == Ratio::from_integer(4);
            Ok((ok, format!("tally {got:?}, value {}", s.value)))
        });

        report.run("prism: 64 spin vectors", || {
            let s = instances::prism_graph().eval_tait_alpha(&opts)?;
            let t = &s.tally;
            let got = (t.count(4, -1), t.count(4, 1), t.count(2, -1), t.count(2, 1));
            let ok = got == (18, 12, 8, 0) && s.chi == Ratio::from_integer(6);
            Ok((ok, format!("tally {got:?}, chi' {}", s.chi)))
        });

        report.run("tallies do not depend on the worker count", || {
            let f = field(3, 1);
            let m = instances::prism_matroid(f.clone());
            let g = instances::q3_graph();
            let base = eval_main1(&m, &f, &SearchMode::Full, &EnumOptions::with_workers(1))?;
            let tb = g.eval_tait_alpha(&EnumOptions::with_workers(1))?;
            for w in [4, 16] {
                let o = EnumOptions::with_workers(w);
                if eval_main1(&m, &f, &SearchMode::Full, &o)? != base || g.eval_tait_alpha(&o)? != tb {
                    return Ok((false, format!("{w} workers")));
                }
            }
            Ok((true, "workers 1, 4, 16".into()))
        });
    }
    report
}
