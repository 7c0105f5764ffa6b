//! Plain-text SVG plots of step functions and cell permutations on `[0,1)`.
//!
//! Each band is 1000 units wide and 200 tall. Output is deterministic.

use num_traits::ToPrimitive;

use crate::measure::StepFunction;
use crate::poset::Poset;
use crate::rational::Rational;
use crate::synchronize::CellPermutation;

pub const WIDTH: f64 = 1000.0;
pub const BAND: f64 = 200.0;

const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
];

fn x_of(t: &Rational) -> f64 {
    t.to_f64().unwrap_or(0.0) * WIDTH
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(bands: usize) -> String {
    let h = BAND * bands.max(1) as f64;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{h}\" viewBox=\"0 0 {WIDTH} {h}\" font-family=\"monospace\" font-size=\"14\">\n"
    )
}

/// One band per `(label, f)`. Pieces are coloured by state; `marks` are
/// half-open intervals shaded across every band.
pub fn step_functions_svg(bands: &[(String, StepFunction)], state: &Poset, marks: &[(Rational, Rational)]) -> String {
    let mut out = header(bands.len());
    for (k, (label, f)) in bands.iter().enumerate() {
        let top = BAND * k as f64;
        for (a, b, x) in f.pieces() {
            let (x0, x1) = (x_of(a), x_of(b));
            out.push_str(&format!(
                "<rect x=\"{x0:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"{}\" stroke=\"white\"/>\n",
                top + 30.0,
                x1 - x0,
                BAND - 40.0,
                PALETTE[x % PALETTE.len()]
            ));
            if x1 - x0 >= 24.0 {
                out.push_str(&format!(
                    "<text x=\"{:.3}\" y=\"{:.3}\" text-anchor=\"middle\" fill=\"white\">{}</text>\n",
                    (x0 + x1) / 2.0,
                    top + BAND / 2.0 + 15.0,
                    escape(state.name(x))
                ));
            }
        }
        out.push_str(&format!("<text x=\"4\" y=\"{:.3}\">{}</text>\n", top + 20.0, escape(label)));
    }
    for (a, b) in marks {
        let (x0, x1) = (x_of(a), x_of(b));
        out.push_str(&format!(
            "<rect x=\"{x0:.3}\" y=\"0\" width=\"{:.3}\" height=\"{:.3}\" fill=\"red\" fill-opacity=\"0.35\"/>\n",
            x1 - x0,
            BAND * bands.len() as f64
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// One band per `(label, φ)`, drawing the graph of `φ` as one segment per
/// cell.
pub fn permutations_svg(bands: &[(String, CellPermutation)]) -> String {
    let mut out = header(bands.len());
    for (k, (label, perm)) in bands.iter().enumerate() {
        let top = BAND * k as f64;
        let (y0, h) = (top + 30.0, BAND - 40.0);
        let l = perm.cells() as f64;
        out.push_str(&format!(
            "<rect x=\"0\" y=\"{y0:.3}\" width=\"{WIDTH}\" height=\"{h:.3}\" fill=\"none\" stroke=\"#999\"/>\n"
        ));
        for (i, &p) in perm.as_slice().iter().enumerate() {
            let (i, p) = (i as f64, p as f64);
            out.push_str(&format!(
                "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"black\" stroke-width=\"2\"/>\n",
                WIDTH * i / l,
                y0 + h - h * p / l,
                WIDTH * (i + 1.0) / l,
                y0 + h - h * (p + 1.0) / l
            ));
        }
        out.push_str(&format!("<text x=\"4\" y=\"{:.3}\">{}</text>\n", top + 20.0, escape(label)));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bands_and_marks() {
        let p = Poset::chain(2, "s").unwrap();
        let f = StepFunction::from_cells(&[0, 1, 1]).unwrap();
        let svg = step_functions_svg(&[("a".into(), f)], &p, &[(crate::rational::ratio(1, 3), crate::rational::ratio(2, 3))]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("height=\"200\""));
        assert_eq!(svg.matches("fill=\"red\"").count(), 1);
        assert!(svg.contains("x=\"333.333\""));
        let phi = permutations_svg(&[("a".into(), CellPermutation::identity(4))]);
        assert_eq!(phi.matches("<line").count(), 4);
    }
}
