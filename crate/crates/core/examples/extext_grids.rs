use specseq::derived::{double_ext_ss, tor_ext_ss, TorExtRoute};
use specseq::fpmod::FPModule;
use specseq::parse::parse_matrix;
use specseq::ring::Ring;
use specseq::spectral::render_sequence;
use std::time::Instant;

fn wmat_module() -> FPModule {
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
    FPModule::new(wmat)
}

fn display(result: &specseq::derived::GrothendieckResult) -> String {
    let mut out = String::new();
    out.push_str("The associated transposed spectral sequence:\n\n");
    out.push_str(&render_sequence(&result.first));
    out.push_str("\nNow the spectral sequence of the bicomplex:\n\n");
    out.push_str(&render_sequence(&result.second));
    out
}

fn main() {
    let w = wmat_module();
    let y = wmat_module();

    let t0 = Instant::now();
    let extext = double_ext_ss(&w, &y, 0).unwrap();
    eprintln!("== ExtExt in {:?}", t0.elapsed());
    println!("===EXTEXT===");
    print!("{}", display(&extext));

    let t0 = Instant::now();
    let torext_g = tor_ext_ss(&w, &y, 0, TorExtRoute::Grothendieck).unwrap();
    eprintln!("== TorExt:Grothendieck in {:?}", t0.elapsed());
    println!("===TOREXT-GROTHENDIECK===");
    print!("{}", display(&torext_g));

    let t0 = Instant::now();
    let torext_b = tor_ext_ss(&w, &y, 0, TorExtRoute::Bifunctor).unwrap();
    eprintln!("== TorExt:Bifunctor in {:?}", t0.elapsed());
    println!("===TOREXT-BIFUNCTOR===");
    print!("{}", display(&torext_b));
}
