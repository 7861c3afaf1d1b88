//! Wedge and interior products on a 4-dimensional space, and the spinor
//! `e^{i_π} λ` of a constant bivector.

use blowuplab::exterior::{exp_interior, interior, GradedForm, GradedVector};
use blowuplab::poly::rat;

fn main() -> blowuplab::Result<()> {
    let n = 4;
    let a = GradedForm::monomial(n, &[0], rat(1))?.add(&GradedForm::monomial(n, &[2], rat(2))?)?;
    let b = GradedForm::monomial(n, &[1, 3], rat(-1))?;
    let ab = a.wedge(&b)?;
    println!("a = {a}");
    println!("b = {b}");
    println!("a ^ b = {ab}");
    println!("a ^ a = {}", a.wedge(&a)?);

    let e1 = GradedVector::<_>::basis(n, 0);
    println!("i_e1 (a ^ b) = {}", interior(&e1, &ab)?);

    // symplectic bivector e1^e2 + e3^e4 against the volume form
    let pi = GradedVector::monomial(n, &[0, 1], rat(1))?.add(&GradedVector::monomial(n, &[2, 3], rat(1))?)?;
    let vol = GradedForm::top(n);
    let phi = exp_interior(&pi, &vol)?;
    println!("e^(i_pi) vol = {phi}");
    for k in phi.degrees() {
        println!("  degree {k}: {}", phi.component(k));
    }
    Ok(())
}
