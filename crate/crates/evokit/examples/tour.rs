//! The README walkthrough, kept compiling: catalog lookup, invariants,
//! cohomology dimensions, and a certified nontrivial deformation.

use evokit::{catalog, cohomology, deformation};

fn main() -> evokit::Result<()> {
    // A 4-dimensional nilpotent evolution algebra from the catalog.
    let alg = catalog::get("mu_4_10")?.algebra;
    assert!(alg.is_nilpotent());
    assert_eq!(alg.type_sequence().parts, vec![1, 1, 2]);

    // Second cohomology: dim B² = 5, and 11 independent directions of
    // infinitesimal deformation.
    let report = cohomology::h2(&alg);
    assert_eq!((report.b2_dim, report.h2_dim), (5, 11));

    // Every evolution algebra admits a nontrivial first-order deformation;
    // the certificate records which construction branch produced it.
    let cert = deformation::nontrivial_infinitesimal(&alg)?;
    assert!(!deformation::is_trivial_infinitesimal(&cert.deformation));

    println!(
        "mu_4_10: type {}, dim B² = {}, dim H² = {}, nonrigidity branch {:?}",
        alg.type_sequence(),
        report.b2_dim,
        report.h2_dim,
        cert.construction_branch
    );
    Ok(())
}
