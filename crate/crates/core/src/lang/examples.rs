//! Built-in worked examples replayed by `verify-examples`.

use super::commands::{run_command, Overrides};
use super::script::parse;

pub struct Example {
    pub name: &'static str,
    pub script: &'static str,
    pub expect: &'static [(&'static str, &'static str)],
}

pub const EXAMPLES: &[Example] = &[
    Example {
        name: "frobenius-p2-generic-member",
        script: "(ring F (Fp 2)) (morphism phi (frobenius x0 x1 x2)) (cmd generic-member phi (chart 0))",
        expect: &[("equation", "(+ (^ x0 2) (* t1 (^ x1 2)) (* t2 (^ x2 2)))")],
    },
    Example {
        name: "frobenius-p3-generic-member",
        script: "(ring F (Fp 3)) (morphism phi (frobenius x0 x1 x2)) (cmd generic-member phi)",
        expect: &[("equation", "(+ (^ x0 3) (* t1 (^ x1 3)) (* t2 (^ x2 3)))")],
    },
    Example {
        name: "frobenius-universal-member",
        script: "(ring F (Fp 2)) (morphism phi (frobenius x0 x1 x2)) (cmd universal-member phi)",
        expect: &[("incidence", "(+ (* (^ x0 2) s0) (* (^ x1 2) s1) (* (^ x2 2) s2))")],
    },
    Example {
        name: "frobenius-survey-f2",
        script: "(ring F (Fp 2)) (morphism phi (frobenius x0 x1 x2)) (cmd survey phi (q 2))",
        expect: &[("rows", "7"), ("non-reduced", "7"), ("smooth", "0")],
    },
    Example {
        name: "frobenius-member-non-reduced",
        script: "(ring F (Fp 3)) (poly f (in x0 x1 x2) (+ (^ x0 3) (* 2 (^ x1 3)) (^ x2 3))) (cmd check-reduced f)",
        expect: &[("verdict", "NonReduced"), ("evidence", "(^ (+ x0 (* 2 x1) x2) 3)")],
    },
    Example {
        name: "frobenius-generic-reduced",
        script: "(ring K (Transc (Fp 2) (t1 t2)))
                 (poly g (in x0 x1 x2) (+ (^ x0 2) (* t1 (^ x1 2)) (* t2 (^ x2 2))))
                 (cmd check-reduced g)",
        expect: &[("verdict", "Reduced")],
    },
    Example {
        name: "frobenius-generic-regular",
        script: "(ring F (Fp 2)) (morphism phi (frobenius x0 x1 x2)) (cmd check-regular phi)",
        expect: &[("verdict", "RegularCertified")],
    },
    Example {
        name: "frobenius-avoids-point",
        script: "(ring F (Fp 2)) (morphism phi (frobenius x0 x1 x2)) (cmd avoid phi (y x1 x2))",
        expect: &[("avoided", "true")],
    },
    Example {
        name: "frobenius-specialize",
        script: "(ring F (Fp 2)) (morphism phi (frobenius x0 x1 x2)) (cmd specialize phi (d 1 2))",
        expect: &[("equation", "(+ (^ x0 2) (* (+ u0 u1) (^ x1 2)) (* (+ (^ u0 2) u2) (^ x2 2)))")],
    },
    Example {
        name: "mixed-p2-generic-member",
        script: "(ring R (Zloc 2)) (morphism phi (mixed-family)) (cmd generic-member phi (eliminate x0))",
        expect: &[("reduced", "(+ (* -1 t1 x1 (^ y0 2)) (* -1 t2 x2 (^ y0 2)) (* x1 (^ y1 2)) (* x2 (^ y2 2)))")],
    },
    Example {
        name: "mixed-p2-regular",
        script: "(ring R (Zloc 2))
                 (space P (proj x0 x1 x2) (proj y0 y1 y2))
                 (poly f (in P) (+ (* x0 (^ y0 2)) (* x1 (^ y1 2)) (* x2 (^ y2 2))))
                 (cmd check-regular f (proper))",
        expect: &[("verdict", "RegularCertified")],
    },
    Example {
        name: "mixed-p2-witness",
        script: "(ring R (Zloc 2)) (morphism phi (mixed-family)) (hyperplane H (-1 1 0)) (cmd mixed-witness phi H)",
        expect: &[("verdict", "NotRegular"), ("case", "Second"), ("verified", "true")],
    },
];

/// Run one example and compare the expected fields.
pub fn replay(ex: &Example) -> Result<(), String> {
    let script = parse(ex.script).map_err(|e| e.to_string())?;
    let report = run_command(&script, "run", &Overrides::default()).map_err(|e| e.to_string())?;
    for (key, want) in ex.expect {
        match report.get(key) {
            Some(got) if got == *want => {}
            Some(got) => return Err(format!("{key}: expected {want}, got {got}")),
            None => return Err(format!("{key}: missing")),
        }
    }
    Ok(())
}
