//! Bounds for the variant where the informed encoder sees only the other user's
//! codeword. The pentagons are those of the message-cognition case with the
//! additional cap `R1 <= H(X1)` (per channel use, minimized over delays for the
//! blocked bound).

use crate::acmac::{
    inner_point_with, outer_point_with, BoundResult, Cognition, InnerParams, OuterParams,
};
use crate::error::Result;
use crate::prob::{DelaySet, DiscreteChannel};

pub use crate::search::{accmac_inner_region, accmac_outer_region};

pub fn accmac_inner_point(
    ch: &DiscreteChannel,
    ds: DelaySet,
    params: &InnerParams,
) -> Result<BoundResult> {
    inner_point_with(ch, ds, params, Cognition::Codeword)
}

pub fn accmac_outer_point(
    ch: &DiscreteChannel,
    ds: DelaySet,
    params: &OuterParams,
) -> Result<BoundResult> {
    outer_point_with(ch, ds, params, Cognition::Codeword)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acmac::{inner_point, outer_point};
    use crate::channels::mod_channel;
    use crate::prob::{ConditionalPmf, Pmf};
    use crate::region::{intersect_pentagons, BoundPentagon};
    use approx::assert_abs_diff_eq;

    #[test]
    fn deterministic_uninformed_input_has_no_rate() {
        let ch = mod_channel();
        let ds = DelaySet::new(0, 1);
        let p =
            InnerParams::independent(ds, Pmf::point_mass(2, 0).unwrap(), Pmf::uniform(4)).unwrap();
        assert_eq!(accmac_inner_point(&ch, ds, &p).unwrap().pentagon.c, 0.0);
        let q = p.product_extension(ds).unwrap();
        assert_eq!(accmac_outer_point(&ch, ds, &q).unwrap().pentagon.c, 0.0);
    }

    #[test]
    fn cap_is_intersection_with_entropy_bound() {
        let ch = mod_channel();
        let ds = DelaySet::new(0, 1);
        let p = InnerParams::new(
            &ch,
            ds,
            Pmf::new(vec![0.3, 0.7]).unwrap(),
            ConditionalPmf::new(
                (0..4)
                    .map(|v| Pmf::normalized(vec![1.0 + v as f64, 2.0, 0.5, 1.0]).unwrap())
                    .collect(),
            )
            .unwrap(),
        )
        .unwrap();
        let plain = inner_point(&ch, ds, &p).unwrap().pentagon;
        let capped = accmac_inner_point(&ch, ds, &p).unwrap().pentagon;
        let h = crate::prob::binary_entropy(0.3);
        let expected =
            intersect_pentagons(&[plain, BoundPentagon::new(f64::INFINITY, f64::INFINITY, h)])
                .unwrap();
        assert_eq!(capped, expected);
    }

    #[test]
    fn synchronous_outer_cap_is_input_entropy() {
        let ch = mod_channel();
        let ds = DelaySet::synchronous();
        let p = InnerParams::independent(ds, Pmf::new(vec![0.2, 0.8]).unwrap(), Pmf::uniform(4))
            .unwrap();
        let q = p.product_extension(ds).unwrap();
        let r = accmac_outer_point(&ch, ds, &q).unwrap();
        assert_abs_diff_eq!(
            r.pentagon.c,
            crate::prob::binary_entropy(0.2),
            epsilon = 1e-12
        );
        let plain = outer_point(&ch, ds, &q).unwrap();
        assert_eq!(plain.pentagon.c, f64::INFINITY);
    }
}
