//! Small well-pointed endofunctors used throughout the tests and the CLI
//! examples.

use std::sync::Arc;

use crate::cat::instances::{chain, chain3, idempotent_algebra, idempotent_monoid, monotone_functor, preorder, scalar, scalar_line, unique_arrow};
use crate::cat::{FiniteCategory, Functor, NatTransformation};
use crate::linalg::Q;
use crate::localise::WellPointedEndo;

fn thin(cat: &Arc<FiniteCategory>, map: &[usize]) -> WellPointedEndo {
    let omega = monotone_functor(cat, map).expect("monotone");
    let theta = cat.objects().map(|x| unique_arrow(cat, x, omega.obj(x)).expect("x <= Ωx")).collect();
    WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, theta)).expect("well-pointed")
}

/// `0 < 1 < 2` with `Ω = (0 ↦ 1, 1 ↦ 2, 2 ↦ 2)`.
pub fn chain3_shift() -> WellPointedEndo {
    thin(&Arc::new(chain3()), &[1, 2, 2])
}

/// `M = {1, e}` with `Ω = id` and `θ = e`.
pub fn monoid_e() -> WellPointedEndo {
    let m = Arc::new(idempotent_monoid());
    let omega = Functor::identity(&m);
    let e = m.basis_arrow(m.morphism_id("e").expect("e"));
    WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, vec![e])).expect("well-pointed")
}

/// `0 < 1` with both objects sent to `1`.
pub fn two_object_collapse() -> WellPointedEndo {
    thin(&Arc::new(chain(2)), &[1, 1])
}

/// The line with `Ω = id` and `θ = 2`.
pub fn scalar_two() -> WellPointedEndo {
    let c = Arc::new(scalar_line());
    let omega = Functor::identity(&c);
    let two = scalar(&c, c.identity_id(0), Q::from_integer(2.into()));
    WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, vec![two])).expect("well-pointed")
}

/// `k[M]` with `Ω = id` and `θ = e`.
pub fn algebra_e() -> WellPointedEndo {
    let c = Arc::new(idempotent_algebra());
    let omega = Functor::identity(&c);
    let e = c.basis_arrow(c.morphism_id("e").expect("e"));
    WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, vec![e])).expect("well-pointed")
}

/// Two uniquely isomorphic objects, swapped by `Ω`.
pub fn swap() -> WellPointedEndo {
    let c = Arc::new(preorder("pair", &["a", "b"], |_, _| true).expect("preorder"));
    thin(&c, &[1, 0])
}

/// Every corpus instance by name.
pub fn all() -> Vec<(&'static str, WellPointedEndo)> {
    vec![
        ("chain3-shift", chain3_shift()),
        ("monoid-e", monoid_e()),
        ("two-object-collapse", two_object_collapse()),
        ("scalar-two", scalar_two()),
        ("algebra-e", algebra_e()),
        ("swap", swap()),
    ]
}
