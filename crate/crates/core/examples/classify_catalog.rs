//! Constant-height classification of every catalog algebra, with witness
//! pairs for the algebras whose height varies.

use blowuplab::classify::{classify_constant_height, sample_height_spectrum, ClassificationVerdict};
use blowuplab::model_io::catalog;

fn main() -> blowuplab::Result<()> {
    for l in catalog::algebras() {
        let v = classify_constant_height(&l)?;
        let spectrum = sample_height_spectrum(&l, 100, 1729)?;
        print!("{:<18} {:<18}", l.name().unwrap_or("?"), v.variant_name());
        match &v {
            ClassificationVerdict::NotConstantHeight { witnesses } => {
                for w in witnesses {
                    print!(" {} -> {}", w.covector, w.height);
                }
            }
            _ => print!(" height {}", v.constant_height().unwrap_or(0)),
        }
        println!("   sampled heights {:?}", spectrum.observed());
    }
    Ok(())
}
