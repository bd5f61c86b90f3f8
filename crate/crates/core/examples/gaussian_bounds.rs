//! Closed-form caps of the Gaussian channel with a known interferer.

use coopmac::gaussian::{
    lambda_bits, macce_nc_bounds, maccm_c_bounds, maccm_nc_bounds, GaussianMacParams, PowerSplit,
};

fn main() -> coopmac::Result<()> {
    let p = GaussianMacParams::mac(20.0, 40.0, 10.0, 1.0)?;
    println!("lambda(1) = {:.6} bits", lambda_bits(1.0)?);

    // non-causal knowledge: the interferer costs nothing
    for (b1, b2) in [(1.0, 1.0), (0.5, 0.5), (0.0, 0.0)] {
        let b = maccm_nc_bounds(&p, b1, b2)?;
        println!("dirty paper, beta = ({b1}, {b2}): {:?}", b.as_array());
    }

    // causal knowledge: part of the power goes into cancelling S
    let s = PowerSplit::new(0.5, 0.5, 0.4, 0.6);
    println!("dirty tape, {s:?}: {:?}", maccm_c_bounds(&p, &s)?.as_array());

    let conf = p.with_conference(1.0, 1.0);
    println!("conferencing at C = 1: {:?}", macce_nc_bounds(&conf, 0.5, 0.5)?.as_array());
    Ok(())
}
