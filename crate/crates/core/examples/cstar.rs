//! Saturation sum rate of the causal conferencing region.

use coopmac::gaussian::{cooperative_sum_rate, cstar, GaussianMacParams};

fn main() -> coopmac::Result<()> {
    for ps in [0.0, 1.0, 10.0, 100.0] {
        let p = GaussianMacParams::mac(20.0, 40.0, ps, 1.0)?;
        let c = cstar(&p)?;
        println!(
            "PS = {ps:>5}: C* = {:.9} at alpha = ({:.6}, {:.6}), no cancellation gives {:.6}",
            c.value,
            c.alpha1,
            c.alpha2,
            cooperative_sum_rate(&p, 0.0, 0.0)
        );
    }
    Ok(())
}
