use specseq::derived::double_ext_ss;
use specseq::fpmod::FPModule;
use specseq::functors::FunctorSpec;
use specseq::parse::parse_matrix;
use specseq::ring::Ring;
use specseq::spectral::{spectral_sequence_bicomplex, Orientation};
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

fn main() {
    let w = wmat_module();
    let y = wmat_module();
    let t0 = Instant::now();
    let b = specseq::derived::grothendieck_bicomplex(
        &FunctorSpec::HomInto(y.clone()),
        &FunctorSpec::DualizeToRing,
        &w,
    )
    .unwrap();
    eprintln!("bicomplex built in {:?}", t0.elapsed());
    if let Some(((pl, ph), (ql, qh))) = b.window() {
        eprintln!("window [{pl}..{ph}]x[{ql}..{qh}]");
        for p in pl..=ph {
            for q in ql..=qh {
                let o = b.object(p, q);
                if !o.is_zero() {
                    eprintln!("  ({p},{q}): {} gens, {} rels", o.ngens(), o.relations().rows());
                }
            }
        }
    }
    let t0 = Instant::now();
    let first = spectral_sequence_bicomplex(&b, Orientation::First).unwrap();
    eprintln!("first SS in {:?} ({} sheets)", t0.elapsed(), first.sheets.len());
    let t0 = Instant::now();
    let _ = double_ext_ss(&w, &y, 0).unwrap();
    eprintln!("full double_ext in {:?}", t0.elapsed());
}
