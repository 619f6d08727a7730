//! Ready-made triangulations and DT datums used by the verification suites,
//! the CLI examples, and the tests.

use rand::Rng;

use crate::dt::{DtDatum, FaceType, Lift, PantsFace, Side};
use crate::tri::{Edge, Face, SurfaceData, Triangulation};

/// The ideal triangle: three boundary edges, one face.
pub fn ideal_triangle() -> Triangulation {
    Triangulation::new(
        vec![
            Edge { id: "a".into(), boundary: true },
            Edge { id: "b".into(), boundary: true },
            Edge { id: "c".into(), boundary: true },
        ],
        vec![Face::Tri { sides: ["a".into(), "b".into(), "c".into()] }],
        Some(SurfaceData { chi: -2, boundary_punctures: 3, circles: 0 }),
    )
    .expect("valid")
}

/// The 1-marked monogon: a single boundary edge and a monogon face.
pub fn monogon_surface() -> Triangulation {
    Triangulation::new(
        vec![Edge { id: "e".into(), boundary: true }],
        vec![Face::Monogon { edge: "e".into() }],
        Some(SurfaceData { chi: -1, boundary_punctures: 1, circles: 1 }),
    )
    .expect("valid")
}

/// A square with a diagonal: two triangles glued along `d`, four boundary
/// edges.
pub fn square_with_diagonal() -> Triangulation {
    Triangulation::new(
        vec![
            Edge { id: "a".into(), boundary: true },
            Edge { id: "b".into(), boundary: true },
            Edge { id: "c".into(), boundary: true },
            Edge { id: "d".into(), boundary: false },
            Edge { id: "e".into(), boundary: true },
        ],
        vec![
            Face::Tri { sides: ["a".into(), "b".into(), "d".into()] },
            Face::Tri { sides: ["d".into(), "c".into(), "e".into()] },
        ],
        None,
    )
    .expect("valid")
}

/// A single triangle with two sides glued to each other (a self-glued
/// interior edge) and one boundary side.
pub fn self_glued_triangle() -> Triangulation {
    Triangulation::new(
        vec![
            Edge { id: "d".into(), boundary: false },
            Edge { id: "b".into(), boundary: true },
        ],
        vec![Face::Tri { sides: ["d".into(), "d".into(), "b".into()] }],
        None,
    )
    .expect("valid")
}

/// Two triangles glued along all three edges (the thrice-punctured sphere).
pub fn two_triangle_sphere_like() -> Triangulation {
    Triangulation::new(
        vec![
            Edge { id: "a".into(), boundary: false },
            Edge { id: "b".into(), boundary: false },
            Edge { id: "c".into(), boundary: false },
        ],
        vec![
            Face::Tri { sides: ["a".into(), "b".into(), "c".into()] },
            Face::Tri { sides: ["a".into(), "c".into(), "b".into()] },
        ],
        Some(SurfaceData { chi: -1, boundary_punctures: 0, circles: 0 }),
    )
    .expect("valid")
}

/// A triangle glued to a monogon along the monogon's circle edge.
pub fn triangle_with_monogon() -> Triangulation {
    Triangulation::new(
        vec![
            Edge { id: "a".into(), boundary: true },
            Edge { id: "b".into(), boundary: true },
            Edge { id: "m".into(), boundary: false },
        ],
        vec![
            Face::Tri { sides: ["a".into(), "b".into(), "m".into()] },
            Face::Monogon { edge: "m".into() },
        ],
        Some(SurfaceData { chi: -2, boundary_punctures: 2, circles: 1 }),
    )
    .expect("valid")
}

/// A random small triangulation: a few triangles and monogons with a random
/// pairing of face sides. Always combinatorially valid; may be disconnected
/// and carries no surface data.
pub fn random_triangulation<R: Rng>(rng: &mut R) -> Triangulation {
    let n_tri = rng.gen_range(1..=4usize);
    let n_mono = rng.gen_range(0..=2usize);
    // Slots: (face, position); monogons come after the triangles.
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for f in 0..n_tri {
        for p in 0..3 {
            slots.push((f, p));
        }
    }
    for m in 0..n_mono {
        slots.push((n_tri + m, 0));
    }
    // Random partial matching.
    let mut order: Vec<usize> = (0..slots.len()).collect();
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let n_pairs = rng.gen_range(0..=order.len() / 2);
    let mut slot_edge: Vec<Option<usize>> = vec![None; slots.len()];
    let mut edges: Vec<Edge> = Vec::new();
    for p in 0..n_pairs {
        let id = format!("i{p}");
        edges.push(Edge { id, boundary: false });
        slot_edge[order[2 * p]] = Some(edges.len() - 1);
        slot_edge[order[2 * p + 1]] = Some(edges.len() - 1);
    }
    let mut n_bd = 0usize;
    for s in 0..slots.len() {
        if slot_edge[s].is_none() {
            edges.push(Edge { id: format!("b{n_bd}"), boundary: true });
            n_bd += 1;
            slot_edge[s] = Some(edges.len() - 1);
        }
    }
    let name = |f: usize, p: usize| -> String {
        let slot_idx = if f < n_tri { f * 3 + p } else { n_tri * 3 + (f - n_tri) };
        edges[slot_edge[slot_idx].expect("assigned")].id.clone()
    };
    let mut faces = Vec::new();
    for f in 0..n_tri {
        faces.push(Face::Tri { sides: [name(f, 0), name(f, 1), name(f, 2)] });
    }
    for m in 0..n_mono {
        faces.push(Face::Monogon { edge: name(n_tri + m, 0) });
    }
    Triangulation::new(edges, faces, None).expect("construction is valid by design")
}

fn bold(curve: usize, lift: Lift) -> Side {
    Side::Bold { curve, lift }
}

fn dashed(boundary: usize) -> Side {
    Side::Dashed { boundary }
}

/// Closed genus-2 surface: two type-3 pants glued along three curves (the
/// theta-graph datum).
pub fn sigma_2_0() -> DtDatum {
    DtDatum::new(
        2,
        0,
        vec!["c1".into(), "c2".into(), "c3".into()],
        vec![
            PantsFace {
                face: FaceType::P3,
                sides: [bold(0, Lift::Prime), bold(1, Lift::Prime), bold(2, Lift::Prime)],
            },
            PantsFace {
                face: FaceType::P3,
                sides: [
                    bold(0, Lift::DoublePrime),
                    bold(1, Lift::DoublePrime),
                    bold(2, Lift::DoublePrime),
                ],
            },
        ],
    )
    .expect("valid")
}

/// Genus 2 with one boundary circle: one type-2 face and two type-3 faces.
pub fn sigma_2_1() -> DtDatum {
    DtDatum::new(
        2,
        1,
        vec!["c1".into(), "c2".into(), "c3".into(), "c4".into()],
        vec![
            PantsFace {
                face: FaceType::P2,
                sides: [bold(0, Lift::DoublePrime), bold(1, Lift::DoublePrime), dashed(0)],
            },
            PantsFace {
                face: FaceType::P3,
                sides: [bold(2, Lift::Prime), bold(2, Lift::DoublePrime), bold(3, Lift::Prime)],
            },
            PantsFace {
                face: FaceType::P3,
                sides: [bold(3, Lift::DoublePrime), bold(0, Lift::Prime), bold(1, Lift::Prime)],
            },
        ],
    )
    .expect("valid")
}

/// The five-punctured sphere: a chain P1 - P2 - P1 along two curves.
pub fn sigma_0_5() -> DtDatum {
    DtDatum::new(
        0,
        5,
        vec!["c1".into(), "c2".into()],
        vec![
            PantsFace {
                face: FaceType::P1,
                sides: [bold(0, Lift::DoublePrime), dashed(0), dashed(1)],
            },
            PantsFace {
                face: FaceType::P2,
                sides: [bold(0, Lift::Prime), bold(1, Lift::Prime), dashed(2)],
            },
            PantsFace {
                face: FaceType::P1,
                sides: [bold(1, Lift::DoublePrime), dashed(3), dashed(4)],
            },
        ],
    )
    .expect("valid")
}

/// Torus with two boundary circles: a ring of two type-2 faces.
pub fn sigma_1_2() -> DtDatum {
    DtDatum::new(
        1,
        2,
        vec!["c1".into(), "c2".into()],
        vec![
            PantsFace {
                face: FaceType::P2,
                sides: [bold(0, Lift::Prime), bold(1, Lift::Prime), dashed(0)],
            },
            PantsFace {
                face: FaceType::P2,
                sides: [bold(0, Lift::DoublePrime), bold(1, Lift::DoublePrime), dashed(1)],
            },
        ],
    )
    .expect("valid")
}
