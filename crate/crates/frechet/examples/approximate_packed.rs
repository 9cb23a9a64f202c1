//! (1+eps)-approximate the Fréchet distance of two c-packed zigzag curves
//! and show how the processed cell count shrinks as eps grows.

use frechet::approx::{approx_compute, ApproxVariant};
use frechet::curve::NormConfig;
use frechet::distance::compute;
use frechet::generate::cpacked_zigzag;

fn main() -> anyhow::Result<()> {
    let a = cpacked_zigzag(24, 4.0, 1)?;
    let b = cpacked_zigzag(24, 4.0, 2)?;
    let norm = NormConfig::default();

    let exact = compute(&a, &b, 1e-9, norm)?;
    println!("exact d_F = {:.9}\n", exact.value);

    for eps in [0.5, 0.2, 0.05] {
        let out = approx_compute(&a, &b, eps, norm)?;
        let v = match out.variant {
            ApproxVariant::ValueApprox(v) => v,
            other => anyhow::bail!("unexpected variant {other:?}"),
        };
        println!(
            "eps = {eps:4.2}:  v = {v:.9}  (ratio {:.4}, cells processed {})",
            v / exact.value,
            out.cells_touched
        );
        assert!(v >= exact.value * (1.0 - 1e-6));
        assert!(v <= exact.value * (1.0 + eps) + 1e-6);
    }
    Ok(())
}
