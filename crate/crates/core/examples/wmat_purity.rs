use specseq::derived::purity_filtration;
use specseq::fpmod::FPModule;
use specseq::parse::parse_matrix;
use specseq::ring::Ring;
use std::time::Instant;

fn main() {
    let r = Ring::parse("QQ[x,y,z]").unwrap();
    let wmat = parse_matrix(
        "[ \
x*y,  y*z,    z,        0,         0,    \
x^3*z,x^2*z^2,0,        x*z^2,     -z^2, \
x^4,  x^3*z,  0,        x^2*z,     -x*z, \
0,    0,      x*y,      -y^2,      x^2-1,\
0,    0,      x^2*z,    -x*y*z,    y*z,  \
0,    0,      x^2*y-x^2,-x*y^2+x*y,y^2-y \
]",
        6,
        5,
        &r,
    )
    .unwrap();
    let w = FPModule::new(wmat);
    println!("rank(W) = {}", w.rank());
    let t0 = Instant::now();
    let report = purity_filtration(&w).unwrap();
    println!("purity filtration in {:?}", t0.elapsed());
    println!("is_pure = {}, reflexively = {}", report.is_pure, report.is_reflexively_pure);
    for part in &report.parts {
        println!(
            "degree {}: zero={} rank={} grade={:?} codegree={:?} gens={} fitting0={:?}",
            part.degree,
            part.module.is_zero(),
            part.module.rank(),
            part.grade,
            part.codegree,
            part.module.ngens(),
            part.module.fitting_ideal(0).basis().entry_strings(),
        );
    }
    let viol = report.filtration.validate();
    println!("filtration violations: {:?}", viol);
    println!("H_0 rank={} vs W rank={}", report.result.total_homology.rank(), w.rank());
    print!("{}", specseq::spectral::render_sequence(&report.result.first));
    println!();
    print!("{}", specseq::spectral::render_sequence(&report.result.second));
}
