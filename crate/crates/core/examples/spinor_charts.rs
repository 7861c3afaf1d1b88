//! Pull the spinor of the linear Poisson structure of so(3) back to each
//! chart of the blowup at the origin and certify its vanishing order.

use blowuplab::model_io::catalog;
use blowuplab::model_io::report::ambient_form_string;
use blowuplab::poly::PolyRing;
use blowuplab::spinor::order::aggregate;
use blowuplab::spinor::{blowup_pullback, linear_poisson, spinor, vanishing_order, volume, BlowupChart};

fn main() -> blowuplab::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "so3".into());
    let l = match catalog::resolve(&name, None)? {
        catalog::CatalogItem::Algebra(l) => l,
        catalog::CatalogItem::Bundle(_) => return Err(blowuplab::Error::Usage("pick an algebra".into())),
    };
    let m = l.dim();
    let ring = PolyRing::new((1..=m).map(|i| format!("x{i}")).collect());
    let phi = spinor(&linear_poisson(&l)?, &volume(m))?;
    println!("phi = {}", ambient_form_string(&phi, &ring));

    let mut certs = Vec::new();
    for chart in BlowupChart::all(m, &(0..m).collect::<Vec<_>>())? {
        let pulled = blowup_pullback(&phi, &chart)?;
        let cert = vanishing_order(&pulled)?;
        println!("{chart}: p*phi = {}", pulled.display(&ring));
        println!("     order {}, {}", cert.order, cert.status.label());
        certs.push(cert);
    }
    match aggregate(&certs).constant() {
        Some(order) => println!("constant order {order} along the divisor"),
        None => println!("order not certified constant along the divisor"),
    }
    Ok(())
}
