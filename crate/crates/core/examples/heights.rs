//! Heights, types, Cartan classes and coadjoint orbit dimensions of a few
//! covectors in the three-dimensional catalog algebras.

use blowuplab::model_io::catalog;
use blowuplab::model_io::report::ambient_form_string;
use blowuplab::poly::PolyRing;
use blowuplab::Covector;

fn main() -> blowuplab::Result<()> {
    let ring = PolyRing::new(vec!["xi1".into(), "xi2".into(), "xi3".into()]);
    let points = [[1, 0, 0], [0, 0, 1], [1, 0, 1], [2, -1, 3]];
    for l in [catalog::so3(), catalog::sl2(), catalog::heis3()] {
        println!("{}:", l.name().unwrap_or("?"));
        println!("  xi ^ d xi = {}", ambient_form_string(&l.generic_contact_form(), &ring));
        for p in points {
            let xi = Covector::from_ints(&p);
            let r = l.height_report(&xi)?;
            println!(
                "  {xi}: d xi = {}, height {}, type {}, class {}, orbit dim {}, radial {}",
                l.d_covector(&xi),
                r.height,
                r.element_type.code(),
                r.cartan_class,
                r.orbit_dim,
                r.radial_in_orbit
            );
        }
    }
    Ok(())
}
