//! Hodge-Euler polynomials of variety classes: the scissor-relation
//! calculus that evaluates geometric constructions to polynomials.
//!
//! ```bash
//! cargo run --example variety_classes
//! ```

use hodgefibre::classes::{
    blowup_class, cubical_class, open_complement, parse_class_expr, ClassExpr,
};
use hodgefibre::ring::parse_polynomial;

fn main() {
    // Named constructors and the text syntax used in input files.
    for text in [
        "projective(2)",
        "curve(3)",
        "p1xp1",
        "blowup_p2(6)",
        "torus(2)",
        "toric(3,3,1)",
        "projective(2) - curve(1)",
        "poly(u^(1/2)*v^(1/2))",
    ] {
        let class = parse_class_expr(text).unwrap();
        println!("{text:28} = {}", class.eval().unwrap());
    }

    // toric(s_1, .., s_n) sums orbit counts against (uv - 1)^k; the orbit
    // counts of projective space reproduce projective(n).
    assert_eq!(
        parse_class_expr("toric(4,6,4,1)").unwrap().eval().unwrap(),
        ClassExpr::Projective(3).eval().unwrap()
    );

    // Blowing up a point on a surface adds one uv; 16 of them give the
    // quartic-resolution surface class.
    let p2 = ClassExpr::Projective(2).eval().unwrap();
    let point = ClassExpr::Point.eval().unwrap();
    let mut blown = p2.clone();
    for _ in 0..16 {
        blown = blowup_class(&blown, &point, 2).unwrap();
    }
    assert_eq!(blown, ClassExpr::BlowupP2(16).eval().unwrap());
    println!("P^2 blown in 16 pts          = {blown}");

    // Complement of a normal crossing divisor by inclusion-exclusion:
    // P^2 minus a triangle of lines is a 2-torus.
    let triangle_levels = [
        parse_polynomial("3 + 3*u*v").unwrap(),
        parse_polynomial("3").unwrap(),
    ];
    let complement = open_complement(&p2, &triangle_levels);
    println!("P^2 minus triangle           = {complement}");
    assert_eq!(complement, ClassExpr::Torus(2).eval().unwrap());

    // A nodal cubic via a cubical hyperresolution: its normalization P^1
    // over it, two points over the node.
    let nodal = cubical_class(&[
        (1, parse_polynomial("1 + u*v").unwrap()),
        (1, parse_polynomial("1").unwrap()),
        (2, parse_polynomial("2").unwrap()),
    ]);
    println!("nodal cubic                  = {nodal}");
}
