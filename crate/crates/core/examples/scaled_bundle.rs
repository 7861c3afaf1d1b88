//! The so(3) bundle over R^2 with brackets scaled by `f(y1, y2)`:
//! f = 1 lifts (non-Poisson), f = 0 lifts as Poisson, f = y1 does not lift.

use blowuplab::model_io::catalog::{resolve, CatalogItem};
use blowuplab::spinor::bundle::analyze_bundle;
use blowuplab::spinor::order::AggregateOrder;
use blowuplab::spinor::verdict::VerdictConfig;

fn main() -> blowuplab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let fs: Vec<&str> = if args.is_empty() {
        vec!["1", "0", "y1", "1 + y1^2 + y2^2"]
    } else {
        args.iter().map(String::as_str).collect()
    };
    for f in fs {
        let CatalogItem::Bundle(b) = resolve("scaled_so3_bundle", Some(f))? else {
            unreachable!()
        };
        let a = analyze_bundle(&b, &VerdictConfig::default())?;
        let order = match &a.aggregate {
            AggregateOrder::Constant { order } => format!("constant order {order}"),
            AggregateOrder::NonConstant { point: Some(p), .. } => format!("leading form vanishes at {p}"),
            _ => "order undetermined".to_string(),
        };
        println!("f = {f}: {}, {order}", a.verdict.name());
    }
    Ok(())
}
