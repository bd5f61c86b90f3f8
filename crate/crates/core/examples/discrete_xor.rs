//! Exact bounds and brute-force search on Y = X1 xor X2 xor S.

use coopmac::discrete::{
    brute_force_frontier, macce_bounds, maccm_nc_pentagon, AuxCaps, AuxScheme, DmcState, SchemeSpace,
};

fn main() -> coopmac::Result<()> {
    let ch = DmcState::binary_xor_state();

    // user 1 pre-cancels the state: x1 = v1 xor s, x2 = v2
    let cancel = AuxScheme::non_causal(
        2, 1, 2, 2,
        vec![1.0, 1.0],
        vec![0.5; 4],
        vec![0.5; 4],
        vec![0, 1, 1, 0],
        vec![0, 0, 1, 1],
    )?;
    println!("cancelling scheme: {:?}", maccm_nc_pentagon(&ch, &cancel)?.as_array());
    println!("with C = 0.5 links: {:?}", macce_bounds(&ch, &cancel, 0.5, 0.5)?.as_array());

    let caps = AuxCaps { nu: 1, nv1: 2, nv2: 2 };
    for causal in [false, true] {
        let space = SchemeSpace::new(&ch, caps, 2, causal)?;
        let f = brute_force_frontier(&ch, caps, 2, causal, 17)?;
        println!(
            "{} search over {} schemes: max sum rate {}",
            if causal { "causal" } else { "non-causal" },
            space.len(),
            f.max_sum_rate().unwrap()
        );
    }
    Ok(())
}
