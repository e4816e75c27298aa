mod algebra;
mod even;
mod loops;
mod odd;

use serde_json::Value;

use super::{Suite, TrialFn};
use crate::loops::formal::{display_wbasis, display_wedges};
use crate::loops::{FormalSum, WBasis, WedgeSum};
use crate::modulispace::ModuliFunction;
use crate::surface::Skeleton;

pub(super) fn trial_fn(s: Suite) -> TrialFn {
    match s {
        Suite::GtAxioms => loops::gt_axioms,
        Suite::Realization => loops::realization,
        Suite::GoldmanEven => even::goldman_even,
        Suite::FrInvariance => even::fr_invariance,
        Suite::FrQuasi => even::fr_quasi,
        Suite::BvInvariance => odd::bv_invariance,
        Suite::BvSquare => odd::bv_square,
        Suite::GeometricBv => odd::geometric_bv,
        Suite::OddGoldman => odd::odd_goldman,
        Suite::OddGoldmanExt => odd::odd_goldman_ext,
        Suite::AlgebraIds => algebra::algebra_ids,
        Suite::Fusion => odd::fusion,
    }
}

fn show_sum(sk: &Skeleton, s: &FormalSum<WBasis>) -> String {
    if s.is_zero() {
        return "0".into();
    }
    s.iter().map(|(g, c)| format!("{c} · ({})", display_wbasis(sk, g))).collect::<Vec<_>>().join(" + ")
}

fn show_wedges(sk: &Skeleton, s: &WedgeSum) -> String {
    display_wedges(sk, s)
}

fn show_fn(sk: &Skeleton, f: &ModuliFunction) -> Value {
    Value::String(f.display(sk))
}
