//! Eyeglass twists on homology: the map, its decomposition into
//! transvections, and covariance under conjugation.
use powell_calc::symplectic::{
    conjugation_covariance_check, eval_sp, eyeglass_composition_check, eyeglass_map, eyeglass_map_from_twists,
    EyeglassSpec, HomologyClass,
};
use powell_calc::Word;

fn main() {
    let g = 3;
    let spec = EyeglassSpec::new(HomologyClass::from_i64s(&[1, 0, 1, 0, 0, 0]), HomologyClass::b(g, 3), 1).unwrap();
    let m = eyeglass_map(&spec);
    println!("eyeglass({}, {}):\n{m}", spec.lens_a(), spec.lens_b());
    println!("from twists agrees: {}", m == eyeglass_map_from_twists(&spec));
    println!("fixes lenses: {}", m.apply(spec.lens_a()) == *spec.lens_a() && m.apply(spec.lens_b()) == *spec.lens_b());

    let mu = HomologyClass::a(g, 2);
    let c = eyeglass_composition_check(spec.lens_a(), spec.lens_b(), &mu).unwrap();
    println!("composition law with mu = {mu}: {}", c.passed());

    let h = eval_sp(g, &Word::parse("w x1 e t^-1").unwrap()).unwrap();
    println!("conjugation covariance: {}", conjugation_covariance_check(&spec, &h).unwrap().passed());
    println!("t at genus {g} as a word:\n{}", eval_sp(g, &Word::parse("t").unwrap()).unwrap());
}
