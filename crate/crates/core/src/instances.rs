//! Small named examples used by the tests, the self-test and the CLI.

use std::sync::Arc;

use crate::fqlin::FqMatrix;
use crate::gf::FieldCtx;
use crate::matroid::RepresentedMatroid;
use crate::tait::CubicPlanarGraph;

/// Edges of the triangular prism: triangles 1-2-3 and 4-5-6 joined by
/// 2-4, 3-5 and 1-6.
pub const PRISM_EDGES: [(usize, usize); 9] =
    [(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5), (4, 6), (5, 6), (1, 6)];

pub const K4_EDGES: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Cube graph, vertices 1-4 on the bottom face and 5-8 above them.
pub const Q3_EDGES: [(usize, usize); 12] = [
    (1, 2), (2, 3), (3, 4), (1, 4),
    (5, 6), (6, 7), (7, 8), (5, 8),
    (1, 5), (2, 6), (3, 7), (4, 8),
];

pub const U24_ROWS: [[i64; 4]; 2] = [[1, 0, 1, 1], [0, 1, 1, -1]];

/// The uniform matroid U_{2,4}; needs at least four points on the
/// projective line, so q >= 3.
pub fn u24(field: Arc<FieldCtx>) -> RepresentedMatroid {
    let rows: Vec<Vec<i64>> = U24_ROWS.iter().map(|r| r.to_vec()).collect();
    let raw = FqMatrix::from_int_rows(field, &rows).expect("rectangular");
    RepresentedMatroid::from_matrix_unlabeled(raw).expect("valid representation")
}

pub fn prism_matroid(field: Arc<FieldCtx>) -> RepresentedMatroid {
    RepresentedMatroid::from_graph(field, 6, &PRISM_EDGES).expect("valid graph")
}

pub fn k4_matroid(field: Arc<FieldCtx>) -> RepresentedMatroid {
    RepresentedMatroid::from_graph(field, 4, &K4_EDGES).expect("valid graph")
}

pub fn triangle_matroid(field: Arc<FieldCtx>) -> RepresentedMatroid {
    RepresentedMatroid::from_graph(field, 3, &[(1, 2), (2, 3), (1, 3)]).expect("valid graph")
}

/// Faces of the prism as vertex cycles: the two triangles and three
/// quadrilaterals, in the order used for its face matrix.
pub const PRISM_FACES: [&[usize]; 5] = [&[1, 2, 3], &[2, 3, 5, 4], &[4, 5, 6], &[1, 3, 5, 6], &[1, 2, 4, 6]];

/// Counterclockwise edge order (indices into `PRISM_EDGES`) at each vertex
/// of a plane drawing of the prism.
pub const PRISM_ROTATION: [[usize; 3]; 6] = [[8, 1, 0], [0, 2, 3], [1, 4, 2], [5, 6, 3], [7, 5, 4], [6, 7, 8]];

pub const K4_ROTATION: [[usize; 3]; 4] = [[0, 2, 1], [3, 4, 0], [1, 5, 3], [4, 5, 2]];

pub const Q3_ROTATION: [[usize; 3]; 8] = [
    [0, 8, 3], [1, 9, 0], [10, 1, 2], [3, 11, 2],
    [8, 4, 7], [9, 5, 4], [5, 10, 6], [7, 6, 11],
];

fn rotation_vecs<const N: usize>(rot: &[[usize; 3]; N]) -> Vec<Vec<usize>> {
    rot.iter().map(|r| r.to_vec()).collect()
}

/// The prism with its faces listed explicitly, in `PRISM_FACES` order.
pub fn prism_graph() -> CubicPlanarGraph {
    let faces: Vec<Vec<usize>> = PRISM_FACES.iter().map(|f| f.to_vec()).collect();
    CubicPlanarGraph::from_faces(6, &PRISM_EDGES, &faces).expect("valid embedding")
}

pub fn prism_graph_from_rotation() -> CubicPlanarGraph {
    CubicPlanarGraph::from_rotation(6, &PRISM_EDGES, &rotation_vecs(&PRISM_ROTATION)).expect("valid embedding")
}

pub fn k4_graph() -> CubicPlanarGraph {
    CubicPlanarGraph::from_rotation(4, &K4_EDGES, &rotation_vecs(&K4_ROTATION)).expect("valid embedding")
}

pub fn q3_graph() -> CubicPlanarGraph {
    CubicPlanarGraph::from_rotation(8, &Q3_EDGES, &rotation_vecs(&Q3_ROTATION)).expect("valid embedding")
}
