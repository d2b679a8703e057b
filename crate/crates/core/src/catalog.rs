//! Small named graphs of groups used throughout the tests and examples.

use crate::gog::GraphOfGroups;
use crate::group::VertexGroup;

/// `C2 * C3 ≅ PSL(2, Z)`: `u` carries `{1, a}`, `w` carries `{1, b, b2}`, one
/// edge `e: u -> w`, based at `u`.
pub fn c2_c3() -> GraphOfGroups {
    let mut b = GraphOfGroups::builder();
    let u = b.vertex("u", VertexGroup::cyclic(2, "a"));
    let w = b.vertex("w", VertexGroup::cyclic(3, "b"));
    b.edge("e", u, w);
    b.base(u);
    b.build().expect("valid instance")
}

/// The infinite dihedral group `C2 * C2`: `p` carries `a`, `q` carries `b`, edge
/// `f: p -> q`, based at `p`.
pub fn d_inf() -> GraphOfGroups {
    let mut b = GraphOfGroups::builder();
    let p = b.vertex("p", VertexGroup::cyclic(2, "a"));
    let q = b.vertex("q", VertexGroup::cyclic(2, "b"));
    b.edge("f", p, q);
    b.base(p);
    b.build().expect("valid instance")
}

/// `Z * Z`, the free group of rank two as a free product: `X` and `Y` both
/// carry the integers, edge `e: X -> Y`, based at `X`. The loop `[1]` at `X` is
/// `x`; `[0, e, 1, ~e, 0]` is `y`.
pub fn z_z() -> GraphOfGroups {
    let mut b = GraphOfGroups::builder();
    let x = b.vertex("X", VertexGroup::Integer);
    let y = b.vertex("Y", VertexGroup::Integer);
    b.edge("e", x, y);
    b.base(x);
    b.build().expect("valid instance")
}

/// `C2 * C3 * C2` along a path `u -e-> w -f-> z`, based at `u`; the second `C2`
/// is generated by `c`.
pub fn c2_c3_c2() -> GraphOfGroups {
    let mut b = GraphOfGroups::builder();
    let u = b.vertex("u", VertexGroup::cyclic(2, "a"));
    let w = b.vertex("w", VertexGroup::cyclic(3, "b"));
    let z = b.vertex("z", VertexGroup::cyclic(2, "c"));
    b.edge("e", u, w);
    b.edge("f", w, z);
    b.base(u);
    b.build().expect("valid instance")
}

/// `C2 * C2 * C3` along a path `p -f-> q -g-> r`, based at `p`.
pub fn c2_c2_c3() -> GraphOfGroups {
    let mut b = GraphOfGroups::builder();
    let p = b.vertex("p", VertexGroup::cyclic(2, "a"));
    let q = b.vertex("q", VertexGroup::cyclic(2, "b"));
    let r = b.vertex("r", VertexGroup::cyclic(3, "c"));
    b.edge("f", p, q);
    b.edge("g", q, r);
    b.base(p);
    b.build().expect("valid instance")
}

/// `F2 * C2`: `X` carries the free group on `x1, x2`, `Y` carries `{1, a}`.
pub fn f2_c2() -> GraphOfGroups {
    let mut b = GraphOfGroups::builder();
    let x = b.vertex("X", VertexGroup::free(2));
    let y = b.vertex("Y", VertexGroup::cyclic(2, "a"));
    b.edge("e", x, y);
    b.base(x);
    b.build().expect("valid instance")
}

/// `Z * C3`: `X` carries the integers, `W` carries `{1, b, b2}`.
pub fn z_c3() -> GraphOfGroups {
    let mut b = GraphOfGroups::builder();
    let x = b.vertex("X", VertexGroup::Integer);
    let w = b.vertex("W", VertexGroup::cyclic(3, "b"));
    b.edge("e", x, w);
    b.base(x);
    b.build().expect("valid instance")
}

/// `C2 * Z`, presented with a loop: a single vertex carrying `C2` and one loop
/// edge `t`, so the free part comes from the graph.
pub fn c2_loop() -> GraphOfGroups {
    let mut b = GraphOfGroups::builder();
    let u = b.vertex("u", VertexGroup::cyclic(2, "a"));
    b.edge("t", u, u);
    b.base(u);
    b.build().expect("valid instance")
}
