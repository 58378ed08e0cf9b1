use specseq::*;
fn main() {
    use specseq::fpmod::{FPModule, ModuleMorphism};
    use specseq::parse::parse_matrix;
    use std::collections::BTreeMap;
    let r = Ring::parse("QQ[x]").unwrap();
    let d = FPModule::free(r.clone(), 1);
    let xl = parse_matrix("[ x-1 ]", 1, 1, &r).unwrap();
    let minus_one = parse_matrix("[ -1 ]", 1, 1, &r).unwrap();
    let mut objects = BTreeMap::new();
    let mut vert = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    for i in 0..3i64 {
        objects.insert((-i, i), d.clone());
        objects.insert((-i, i + 1), d.clone());
        let vm = if i % 2 == 0 { xl.clone() } else { xl.neg() };
        vert.insert((-i, i + 1), ModuleMorphism::new(d.clone(), d.clone(), vm).unwrap());
        if i + 1 < 3 {
            horiz.insert((-i, i + 1), ModuleMorphism::new(d.clone(), d.clone(), minus_one.clone()).unwrap());
        }
    }
    let b = specseq::bicomplex::Bicomplex::new(r, objects, vert, horiz).unwrap();
    let ss2 = specseq::spectral::spectral_sequence_bicomplex(&b, specseq::spectral::Orientation::Second).unwrap();
    print!("{}", specseq::spectral::render_sequence(&ss2));
}
