//! Maximum-cardinality subset searches: `A*` over restrictions `M|A` and
//! `A*_perp` over contractions `M.A`.

use std::sync::Arc;

use itertools::Itertools;

use super::{alpha_count, tally_alphas, AlphaSum, AlphaTerm, EnumOptions};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FqElem};
use crate::matroid::{elems_of, full_mask, mask_of, AlphaVector, ElementMask, RankTable, RepresentedMatroid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Minor {
    Restriction,
    Contraction,
}

/// Which subsets the search may consider.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Every subset, descending cardinality, lexicographically first winner.
    #[default]
    Full,
    /// Only subsets compatible with a fixed base: `A ⊇ B'` for restrictions,
    /// `E - A ⊆ B'` for contractions.
    Restricted(Vec<usize>),
    /// Scans every maximizer and fails if their terms disagree.
    AllMaximizers,
}

/// Precomputed rank table and subset order for one matroid.
#[derive(Clone, Debug)]
pub struct SubsetSearch {
    minor: Minor,
    n: usize,
    rank: usize,
    table: RankTable,
    order: Vec<ElementMask>,
}

impl SubsetSearch {
    /// Searches over restrictions `M|A`; rejects matroids with loops.
    pub fn restrictions(m: &RepresentedMatroid) -> Result<Self> {
        if let Some(&e) = m.loops().first() {
            return Err(Error::Inapplicable(format!("element `{}` is a loop", m.labels()[e])));
        }
        Self::build(m, Minor::Restriction)
    }

    /// Searches over contractions `M.A`; rejects matroids with coloops.
    pub fn contractions(m: &RepresentedMatroid) -> Result<Self> {
        if let Some(&e) = m.coloops().first() {
            return Err(Error::Inapplicable(format!("element `{}` is a coloop", m.labels()[e])));
        }
        Self::build(m, Minor::Contraction)
    }

    fn build(m: &RepresentedMatroid, minor: Minor) -> Result<Self> {
        let n = m.len();
        let table = RankTable::build(m)?;
        let order = (0..=n)
            .rev()
            .flat_map(|k| (0..n).combinations(k).map(|c| mask_of(&c)))
            .collect();
        Ok(SubsetSearch { minor, n, rank: m.rank(), table, order })
    }

    fn weights(&self, f: &FieldCtx, alpha: &[FqElem]) -> Vec<FqElem> {
        let mut w = vec![FqElem::ONE; 1 << self.n];
        for mask in 1usize..1 << self.n {
            let low = mask.trailing_zeros() as usize;
            w[mask] = f.mul(w[mask & (mask - 1)], alpha[low]);
        }
        w
    }

    /// Bases of the minor on `a`, as subsets of `a`.
    fn minor_bases(&self, a: ElementMask) -> (usize, Vec<ElementMask>) {
        let (k, ok): (usize, Box<dyn Fn(ElementMask) -> bool + '_>) = match self.minor {
            Minor::Restriction => {
                let k = self.table.rank(a);
                (k, Box::new(move |b| self.table.rank(b) == k))
            }
            Minor::Contraction => {
                let c = full_mask(self.n) & !a;
                let k = self.rank - self.table.rank(c);
                (k, Box::new(move |b| self.table.rank(b | c) == self.rank))
            }
        };
        let mut out = Vec::new();
        let mut b = a;
        loop {
            if b.count_ones() as usize == k && ok(b) {
                out.push(b);
            }
            if b == 0 {
                break;
            }
            b = (b - 1) & a;
        }
        (k, out)
    }

    /// The term contributed by subset `a`, or None when its basis sum is 0.
    /// For restrictions the test is on `s_bar(M|A)`, which is `s` of the
    /// dual contraction.
    fn term_at(&self, f: &FieldCtx, w: &[FqElem], a: ElementMask) -> Option<AlphaTerm> {
        let (k, bases) = self.minor_bases(a);
        match self.minor {
            Minor::Restriction => {
                let sbar = bases
                    .iter()
                    .fold(FqElem::ZERO, |acc, &b| f.add(acc, w[(a & !b) as usize]));
                if sbar.is_zero() {
                    return None;
                }
                assert_eq!(k, self.rank, "a maximizer of a restriction search spans the matroid");
                Some(AlphaTerm { r_star: a.count_ones() as usize - self.rank, sign: f.quad_char(sbar) })
            }
            Minor::Contraction => {
                let s = bases.iter().fold(FqElem::ZERO, |acc, &b| f.add(acc, w[b as usize]));
                (!s.is_zero()).then(|| AlphaTerm { r_star: k, sign: f.quad_char(s) })
            }
        }
    }

    fn admissible(&self, a: ElementMask, base: Option<ElementMask>) -> bool {
        match (base, self.minor) {
            (None, _) => true,
            (Some(b), Minor::Restriction) => a & b == b,
            (Some(b), Minor::Contraction) => (full_mask(self.n) & !a) & !b == 0,
        }
    }

    fn check_base(&self, base: &[usize]) -> Result<ElementMask> {
        if base.iter().any(|&e| e >= self.n) {
            return Err(Error::Contract("base element out of range".into()));
        }
        let b = mask_of(base);
        if b.count_ones() as usize != self.rank || self.table.rank(b) != self.rank {
            return Err(Error::Contract(format!("{base:?} is not a base")));
        }
        Ok(b)
    }

    fn search(&self, f: &FieldCtx, alpha: &[FqElem], base: Option<ElementMask>) -> AlphaTerm {
        let w = self.weights(f, alpha);
        self.order
            .iter()
            .filter(|&&a| self.admissible(a, base))
            .find_map(|&a| self.term_at(f, &w, a))
            .expect("the empty restriction / full contraction has basis sum 1")
    }

    pub fn term(&self, f: &FieldCtx, alpha: &[FqElem]) -> AlphaTerm {
        self.search(f, alpha, None)
    }

    pub fn term_restricted(&self, f: &FieldCtx, alpha: &[FqElem], base: &[usize]) -> Result<AlphaTerm> {
        let b = self.check_base(base)?;
        Ok(self.search(f, alpha, Some(b)))
    }

    /// Every subset of the winning cardinality with a nonzero basis sum,
    /// with the term each one would give.
    pub fn maximizers(&self, f: &FieldCtx, alpha: &[FqElem]) -> Vec<(Vec<usize>, AlphaTerm)> {
        let w = self.weights(f, alpha);
        let mut out = Vec::new();
        let mut size = None;
        for &a in &self.order {
            let card = a.count_ones();
            if size.is_some_and(|s| s != card) {
                break;
            }
            if let Some(t) = self.term_at(f, &w, a) {
                size = Some(card);
                out.push((elems_of(a), t));
            }
        }
        out
    }

    fn term_checked(&self, f: &FieldCtx, alpha: &[FqElem]) -> Result<AlphaTerm> {
        let all = self.maximizers(f, alpha);
        let first = all[0].1;
        if let Some((a, t)) = all.iter().find(|(_, t)| *t != first) {
            return Err(Error::Contract(format!(
                "maximizers {:?} and {a:?} give different terms {first:?} and {t:?}",
                all[0].0
            )));
        }
        Ok(first)
    }

    fn eval(&self, field: &Arc<FieldCtx>, mode: &SearchMode, opts: &EnumOptions) -> Result<AlphaSum> {
        let base = match mode {
            SearchMode::Restricted(b) => Some(b.as_slice()),
            _ => None,
        };
        let base_mask = base.map(|b| self.check_base(b)).transpose()?;
        let tally = tally_alphas(field, self.n, opts, || (), |_, alpha| match mode {
            SearchMode::AllMaximizers => self.term_checked(field, alpha),
            _ => Ok(self.search(field, alpha, base_mask)),
        })?;
        Ok(AlphaSum::new(field.q() as u64, tally))
    }
}

fn check_len(m: &RepresentedMatroid, alpha: &AlphaVector) -> Result<()> {
    if alpha.len() != m.len() {
        return Err(Error::Dimension(format!("{} weights for {} elements", alpha.len(), m.len())));
    }
    Ok(())
}

/// `A*`: the lexicographically first maximum-cardinality `A` with
/// `s_bar(M|A) != 0`; returns `r* = |A*| - r(M)` and `eta(s_bar(M|A*))`.
/// Over F_3 this is the same as asking for `s(M|A) != 0`, since every
/// weight is its own inverse there.
/// The weights may live in any field of odd characteristic; the matroid is
/// assumed regular.
pub fn term_main1(m: &RepresentedMatroid, alpha: &AlphaVector) -> Result<AlphaTerm> {
    check_len(m, alpha)?;
    Ok(SubsetSearch::restrictions(m)?.term(alpha.field(), alpha.values()))
}

/// As `term_main1`, searching only supersets of the base `base`.
pub fn term_main1_restricted(m: &RepresentedMatroid, alpha: &AlphaVector, base: &[usize]) -> Result<AlphaTerm> {
    check_len(m, alpha)?;
    SubsetSearch::restrictions(m)?.term_restricted(alpha.field(), alpha.values(), base)
}

/// All maximizers of the `A*` search and their terms.
pub fn main1_maximizers(m: &RepresentedMatroid, alpha: &AlphaVector) -> Result<Vec<(Vec<usize>, AlphaTerm)>> {
    check_len(m, alpha)?;
    Ok(SubsetSearch::restrictions(m)?.maximizers(alpha.field(), alpha.values()))
}

/// `A*_perp`: maximum-cardinality `A` with `s(M.A) != 0`; returns
/// `r(M.A*_perp)` and `eta(s(M.A*_perp))`.
pub fn term_main2(m: &RepresentedMatroid, alpha: &AlphaVector) -> Result<AlphaTerm> {
    check_len(m, alpha)?;
    Ok(SubsetSearch::contractions(m)?.term(alpha.field(), alpha.values()))
}

/// As `term_main2`, with `E - A` inside the base `base`.
pub fn term_main2_restricted(m: &RepresentedMatroid, alpha: &AlphaVector, base: &[usize]) -> Result<AlphaTerm> {
    check_len(m, alpha)?;
    SubsetSearch::contractions(m)?.term_restricted(alpha.field(), alpha.values(), base)
}

/// `sum_alpha g(q, r*) eta(s_bar(M|A*))` over alpha in (F_q^*)^E, which is
/// `chi_M(q)` for a loopless regular matroid.
pub fn eval_main1(m: &RepresentedMatroid, field: &Arc<FieldCtx>, mode: &SearchMode, opts: &EnumOptions) -> Result<AlphaSum> {
    alpha_count(field, m.len(), opts.budget)?;
    SubsetSearch::restrictions(m)?.eval(field, mode, opts)
}

/// `chi_{M^perp}(q)` for a coloop-free regular matroid, evaluated as
/// `eval_main1` on the dual.
pub fn eval_main2(m: &RepresentedMatroid, field: &Arc<FieldCtx>, mode: &SearchMode, opts: &EnumOptions) -> Result<AlphaSum> {
    if let Some(&e) = m.coloops().first() {
        return Err(Error::Inapplicable(format!("element `{}` is a coloop", m.labels()[e])));
    }
    eval_main1(&m.dual(), field, mode, opts)
}

/// `eval_main2` computed directly from contractions of `M`.
pub fn eval_main2_contraction(
    m: &RepresentedMatroid,
    field: &Arc<FieldCtx>,
    mode: &SearchMode,
    opts: &EnumOptions,
) -> Result<AlphaSum> {
    alpha_count(field, m.len(), opts.budget)?;
    SubsetSearch::contractions(m)?.eval(field, mode, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::matroid::chi_whitney;
    use num_rational::Ratio;

    fn field(p: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, 1).unwrap())
    }

    fn opts() -> EnumOptions {
        EnumOptions::with_workers(2)
    }

    #[test]
    fn prism_all_ones() {
        let f = field(3);
        let prism = instances::prism_matroid(f.clone());
        let ones = AlphaVector::from_ints(f.clone(), &[1; 9]).unwrap();
        assert!(prism.s_poly(&ones).unwrap().is_zero());
        // deleting the triangle edge 1-2 leaves 35 spanning trees, a rung 30
        assert_eq!(term_main1(&prism, &ones).unwrap().r_star, 3);
        assert_eq!(prism.restrict(&(1..9).collect::<Vec<_>>()).unwrap().bases().len(), 35);
        let rungless = prism.restrict(&[0, 1, 2, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(rungless.bases().len(), 30);
    }

    #[test]
    fn prism_zero_cases() {
        // every alpha whose 8-element restrictions all vanish is rescued by
        // A = E - {1-2, 1-3}
        let f = field(3);
        let prism = instances::prism_matroid(f.clone());
        let search = SubsetSearch::restrictions(&prism).unwrap();
        let rest: Vec<usize> = (2..9).collect();
        super::super::fold_alphas(&f, 9, &EnumOptions::with_workers(1), || (), |_, a| {
            let t = search.term(&f, a);
            if t.r_star == 2 {
                let alpha = AlphaVector::new(f.clone(), a.to_vec()).unwrap();
                let s0 = prism.restrict(&rest).unwrap().s_poly(&AlphaVector::new(f.clone(), a[2..].to_vec()).unwrap());
                assert!(!s0.unwrap().is_zero());
                let all = main1_maximizers(&prism, &alpha).unwrap();
                assert!(all.iter().any(|(m, _)| *m == rest));
            }
            Ok(())
        })
        .unwrap();
        let tally = eval_main1(&prism, &f, &SearchMode::Full, &opts()).unwrap().tally;
        assert_eq!(tally.count(2, 1) + tally.count(2, -1), 16);
    }

    #[test]
    fn free_matroid_term() {
        let f = field(5);
        let m = RepresentedMatroid::from_graph(f.clone(), 3, &[(1, 2), (2, 3)]).unwrap();
        let ones = AlphaVector::from_ints(f.clone(), &[1, 1]).unwrap();
        assert_eq!(term_main1(&m, &ones).unwrap(), AlphaTerm { r_star: 0, sign: 1 });
        let edge = RepresentedMatroid::from_graph(field(3), 2, &[(1, 2)]).unwrap();
        let s = eval_main1(&edge, &field(3), &SearchMode::Full, &opts()).unwrap();
        assert_eq!(s.value, Ratio::from_integer(2));
    }

    #[test]
    fn prism_golden_tally() {
        let f = field(3);
        let prism = instances::prism_matroid(f.clone());
        let s = eval_main1(&prism, &f, &SearchMode::Full, &opts()).unwrap();
        let t = &s.tally;
        assert_eq!((t.count(4, 1), t.count(4, -1), t.count(2, 1), t.count(2, -1)), (186, 162, 6, 10));
        assert_eq!(t.total(), 512);
        assert_eq!(s.value, Ratio::from_integer(4));
    }

    #[test]
    fn loops_and_coloops_are_rejected() {
        let f = field(3);
        let looped = RepresentedMatroid::from_graph(f.clone(), 2, &[(1, 2), (2, 2), (1, 2)]).unwrap();
        let err = eval_main1(&looped, &f, &SearchMode::Full, &opts()).unwrap_err();
        assert!(err.is_inapplicable());
        let tree = RepresentedMatroid::from_graph(f.clone(), 3, &[(1, 2), (2, 3)]).unwrap();
        assert!(eval_main2(&tree, &f, &SearchMode::Full, &opts()).unwrap_err().is_inapplicable());
        assert!(eval_main2_contraction(&tree, &f, &SearchMode::Full, &opts()).unwrap_err().is_inapplicable());
    }

    #[test]
    fn small_graphs_match_whitney_and_flows() {
        let graphs: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (3, vec![(1, 2), (2, 3), (1, 3)]),
            (4, vec![(1, 2), (2, 3), (3, 4), (1, 4)]),
            (4, vec![(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]),
            (4, instances::K4_EDGES.to_vec()),
        ];
        for p in [3, 5] {
            let f = field(p);
            for (n, edges) in &graphs {
                let m = RepresentedMatroid::from_graph(f.clone(), *n, edges).unwrap();
                let chi = chi_whitney(&m, p as i64).unwrap();
                let main1 = eval_main1(&m, &f, &SearchMode::Full, &opts()).unwrap();
                assert_eq!(main1.value, Ratio::from_integer(chi));
                let flow = chi_whitney(&m.dual(), p as i64).unwrap();
                let main2 = eval_main2(&m, &f, &SearchMode::Full, &opts()).unwrap();
                let direct = eval_main2_contraction(&m, &f, &SearchMode::Full, &opts()).unwrap();
                assert_eq!(main2.value, Ratio::from_integer(flow));
                assert_eq!(direct.tally, main2.tally);
            }
        }
    }

    #[test]
    fn dual_terms_agree_per_alpha() {
        let f = field(3);
        let m = instances::k4_matroid(f.clone());
        let d = m.dual();
        let base = m.bases()[0].clone();
        let dual_base: Vec<usize> = (0..6).filter(|e| !base.contains(e)).collect();
        let s2 = SubsetSearch::contractions(&m).unwrap();
        let s1 = SubsetSearch::restrictions(&d).unwrap();
        super::super::fold_alphas(&f, 6, &opts(), || (), |_, a| {
            let t = s2.term(&f, a);
            assert_eq!(t, s1.term(&f, a));
            assert_eq!(t, s2.term_restricted(&f, a, &base).unwrap());
            assert_eq!(t, s1.term_restricted(&f, a, &dual_base).unwrap());
            Ok(())
        })
        .unwrap();
    }

    #[test]
    fn maximizers_agree_on_prism() {
        let f = field(3);
        let prism = instances::prism_matroid(f.clone());
        let a = eval_main1(&prism, &f, &SearchMode::AllMaximizers, &opts()).unwrap();
        let b = eval_main1(&prism, &f, &SearchMode::Full, &opts()).unwrap();
        assert_eq!(a, b);
        let ones = AlphaVector::from_ints(f, &[1; 9]).unwrap();
        let all = main1_maximizers(&prism, &ones).unwrap();
        assert!(all.len() > 1);
        assert!(all.iter().all(|(a, t)| a.len() == 8 && t.r_star == 3));
    }

    #[test]
    fn restricted_rejects_non_bases() {
        let f = field(3);
        let prism = instances::prism_matroid(f.clone());
        let ones = AlphaVector::from_ints(f.clone(), &[1; 9]).unwrap();
        assert!(matches!(term_main1_restricted(&prism, &ones, &[0, 1, 2, 3, 4]), Err(Error::Contract(_))));
        let mode = SearchMode::Restricted(vec![0, 1]);
        assert!(matches!(eval_main1(&prism, &f, &mode, &opts()), Err(Error::Contract(_))));
    }

    #[test]
    fn u24_is_not_covered() {
        // non-regular: the sum misses chi(q) = (q-1)(q-3)
        let s5 = eval_main1(&instances::u24(field(5)), &field(5), &SearchMode::Full, &opts()).unwrap();
        assert_eq!(s5.value, Ratio::from_integer(-16));
        assert_ne!(s5.value, Ratio::from_integer(8));
    }
}
