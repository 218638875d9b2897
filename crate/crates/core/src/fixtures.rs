//! Small named complexes used by tests, benchmarks and examples.
//!
//! Every edge has unit length and every face unit area unless stated.

use crate::chain::Chain1;
use crate::complex::{ComplexBuilder, MetricComplex};
use crate::rational::int;

fn vertices(b: &mut ComplexBuilder, spec: &[(&str, f64, f64)]) {
    for &(name, x, y) in spec {
        b.vertex(name, Some([x, y])).expect("fixture vertex");
    }
}

fn edges(b: &mut ComplexBuilder, spec: &[(&str, &str, &str)]) {
    for &(name, tail, head) in spec {
        b.edge(name, tail, head, int(1)).expect("fixture edge");
    }
}

/// Triangle `a → b → c → a` with one face `f = ab + bc + ca`.
pub fn triangle() -> MetricComplex {
    let mut b = MetricComplex::builder();
    vertices(&mut b, &[("a", 0.0, 0.0), ("b", 1.0, 0.0), ("c", 0.5, 0.9)]);
    edges(&mut b, &[("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")]);
    b.face("f", &[("ab", 1), ("bc", 1), ("ca", 1)], int(1)).expect("fixture face");
    b.build()
}

/// `ab + bc + ca` on [`triangle`] (or any complex with those edge ids).
pub fn triangle_cycle(cx: &MetricComplex) -> Chain1 {
    Chain1::from_named(cx, [("ab", 1), ("bc", 1), ("ca", 1)]).expect("triangle edges")
}

/// A triangle `a b c` and a square `c d e f` glued at `c`. No faces.
pub fn figure_eight() -> MetricComplex {
    let mut b = MetricComplex::builder();
    figure_eight_cells(&mut b);
    b.build()
}

fn figure_eight_cells(b: &mut ComplexBuilder) {
    vertices(
        b,
        &[("a", -1.0, 0.6), ("b", -1.0, -0.6), ("c", 0.0, 0.0), ("d", 0.7, -0.7), ("e", 1.4, 0.0), ("f", 0.7, 0.7)],
    );
    edges(
        b,
        &[
            ("ab", "a", "b"),
            ("bc", "b", "c"),
            ("ca", "c", "a"),
            ("cd", "c", "d"),
            ("de", "d", "e"),
            ("ef", "e", "f"),
            ("fc", "f", "c"),
        ],
    );
}

/// [`figure_eight`] plus a tail edge `a → g` and the triangle filled by a
/// face of area 1: eight edges, one face.
pub fn figure_eight_with_tail() -> MetricComplex {
    let mut b = MetricComplex::builder();
    figure_eight_cells(&mut b);
    b.vertex("g", Some([-2.0, 0.6])).expect("fixture vertex");
    b.edge("ag", "a", "g", int(1)).expect("fixture edge");
    b.face("t", &[("ab", 1), ("bc", 1), ("ca", 1)], int(1)).expect("fixture face");
    b.build()
}

/// Walk `a → b → c → d → b` as a complex: a stick with a triangle on its end.
pub fn lollipop() -> MetricComplex {
    let mut b = MetricComplex::builder();
    vertices(&mut b, &[("a", -1.0, 0.0), ("b", 0.0, 0.0), ("c", 1.0, -0.6), ("d", 1.0, 0.6)]);
    edges(&mut b, &[("ab", "a", "b"), ("bc", "b", "c"), ("cd", "c", "d"), ("db", "d", "b")]);
    b.build()
}

/// Square ring: outer cycle `o0..o3`, inner cycle `i0..i3`, four spokes and
/// four quadrilateral faces between them. The inner cycle bounds nothing.
pub fn annulus() -> MetricComplex {
    let mut b = MetricComplex::builder();
    let outer = [(-2.0, -2.0), (2.0, -2.0), (2.0, 2.0), (-2.0, 2.0)];
    let inner = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];
    for (i, &(x, y)) in outer.iter().enumerate() {
        b.vertex(format!("o{i}"), Some([x, y])).expect("fixture vertex");
    }
    for (i, &(x, y)) in inner.iter().enumerate() {
        b.vertex(format!("i{i}"), Some([x, y])).expect("fixture vertex");
    }
    for i in 0..4 {
        let j = (i + 1) % 4;
        b.edge(format!("o{i}o{j}"), &format!("o{i}"), &format!("o{j}"), int(1)).expect("fixture edge");
        b.edge(format!("i{i}i{j}"), &format!("i{i}"), &format!("i{j}"), int(1)).expect("fixture edge");
        b.edge(format!("s{i}"), &format!("o{i}"), &format!("i{i}"), int(1)).expect("fixture edge");
    }
    for i in 0..4 {
        let j = (i + 1) % 4;
        let outer_edge = format!("o{i}o{j}");
        let spoke_j = format!("s{j}");
        let inner_edge = format!("i{i}i{j}");
        let spoke_i = format!("s{i}");
        b.face(format!("q{i}"), &[(&outer_edge, 1), (&spoke_j, 1), (&inner_edge, -1), (&spoke_i, -1)], int(1))
            .expect("fixture face");
    }
    b.build()
}

/// `i0 → i1 → i2 → i3 → i0` on [`annulus`].
pub fn annulus_inner_cycle(cx: &MetricComplex) -> Chain1 {
    Chain1::from_named(cx, [("i0i1", 1), ("i1i2", 1), ("i2i3", 1), ("i3i0", 1)]).expect("annulus edges")
}

/// Boundary of a tetrahedron: four vertices, six edges, four consistently
/// oriented triangles forming a sphere.
pub fn tetrahedron() -> MetricComplex {
    let mut b = MetricComplex::builder();
    vertices(&mut b, &[("p", 0.0, 0.0), ("q", 2.0, 0.0), ("r", 1.0, 1.8), ("s", 1.0, 0.6)]);
    edges(
        &mut b,
        &[("pq", "p", "q"), ("pr", "p", "r"), ("ps", "p", "s"), ("qr", "q", "r"), ("qs", "q", "s"), ("rs", "r", "s")],
    );
    b.face("pqr", &[("pq", 1), ("qr", 1), ("pr", -1)], int(1)).expect("fixture face");
    b.face("psq", &[("ps", 1), ("qs", -1), ("pq", -1)], int(1)).expect("fixture face");
    b.face("prs", &[("pr", 1), ("rs", 1), ("ps", -1)], int(1)).expect("fixture face");
    b.face("qsr", &[("qs", 1), ("rs", -1), ("qr", -1)], int(1)).expect("fixture face");
    b.build()
}

/// Five-vertex triangulated Möbius strip: triangles `(i, i+1, i+2) mod 5`
/// on the complete graph `K5`. Edges run from the lower to the higher index.
pub fn mobius_strip() -> MetricComplex {
    let mut b = MetricComplex::builder();
    for i in 0..5 {
        let angle = std::f64::consts::TAU * i as f64 / 5.0;
        b.vertex(format!("m{i}"), Some([angle.cos(), angle.sin()])).expect("fixture vertex");
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            b.edge(format!("m{i}m{j}"), &format!("m{i}"), &format!("m{j}"), int(1)).expect("fixture edge");
        }
    }
    let side = |u: usize, v: usize| -> (String, i64) {
        if u < v {
            (format!("m{u}m{v}"), 1)
        } else {
            (format!("m{v}m{u}"), -1)
        }
    };
    for i in 0..5 {
        let (u, v, w) = (i, (i + 1) % 5, (i + 2) % 5);
        let sides = [side(u, v), side(v, w), side(w, u)];
        let borrowed: Vec<(&str, i64)> = sides.iter().map(|(n, s)| (n.as_str(), *s)).collect();
        b.face(format!("t{i}"), &borrowed, int(1)).expect("fixture face");
    }
    b.build()
}

/// Six vertices on a hexagon `a..f` with two chords, a second `a → b` edge
/// and a self-loop at `c`.
pub fn hexagon_multigraph() -> MetricComplex {
    let mut b = MetricComplex::builder();
    let names = ["a", "b", "c", "d", "e", "f"];
    for (i, name) in names.iter().enumerate() {
        let angle = std::f64::consts::TAU * i as f64 / 6.0;
        b.vertex(*name, Some([angle.cos(), angle.sin()])).expect("fixture vertex");
    }
    edges(
        &mut b,
        &[
            ("ab", "a", "b"),
            ("bc", "b", "c"),
            ("cd", "c", "d"),
            ("de", "d", "e"),
            ("ef", "e", "f"),
            ("fa", "f", "a"),
            ("ad", "a", "d"),
            ("eb", "e", "b"),
            ("ab2", "a", "b"),
            ("cc", "c", "c"),
        ],
    );
    b.build()
}

/// Two segments `n → x → s` and `w → x → e` crossing at `x`, with arms of
/// lengths 1 and 2 made of unit edges. No faces.
pub fn crossing() -> MetricComplex {
    let mut b = MetricComplex::builder();
    vertices(
        &mut b,
        &[
            ("n", 0.0, 1.0),
            ("x", 0.0, 0.0),
            ("s1", 0.0, -1.0),
            ("s", 0.0, -2.0),
            ("w1", -1.0, 0.0),
            ("w", -2.0, 0.0),
            ("e", 1.0, 0.0),
        ],
    );
    edges(
        &mut b,
        &[
            ("nx", "n", "x"),
            ("xs1", "x", "s1"),
            ("s1s", "s1", "s"),
            ("ww1", "w", "w1"),
            ("w1x", "w1", "x"),
            ("xe", "x", "e"),
        ],
    );
    b.build()
}
