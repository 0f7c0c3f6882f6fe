//! Cone pictures of a Janet set, one panel per sheet: `ρ`-degree to the
//! right, `σ`-degree upwards.
//!
//! ASCII marks: `o` leading monomial, `#` full cone, `|` cone along `σ`,
//! `-` cone along `ρ`, `.` staircase.

use std::fmt::Write;

use crate::freemod::Monomial;
use crate::janet::{JanetSet, Mult};

/// Leading monomials with their multiplicative variables.
#[derive(Clone, Debug)]
pub struct Cones {
    pub names: (String, String),
    pub sheets: Vec<usize>,
    pub cones: Vec<(Monomial, Mult)>,
    pub k_max: u32,
    pub j_max: u32,
}

impl Cones {
    pub fn of(j: &JanetSet) -> Cones {
        let cones: Vec<(Monomial, Mult)> = j.pairs().iter().map(|p| (p.lm(), p.mu())).collect();
        let k_max = cones.iter().map(|c| c.0.k).max().unwrap_or(0) + 2;
        let j_max = (cones.iter().map(|c| c.0.j).max().unwrap_or(0) + 2).max(3);
        let (r, s) = j.twist().names();
        Cones { names: (r.into(), s.into()), sheets: j.order().perm().to_vec(), cones, k_max, j_max }
    }

    fn mark(&self, sheet: usize, k: u32, j: u32) -> char {
        for (lm, mu) in &self.cones {
            if lm.sheet != sheet {
                continue;
            }
            if lm.k == k && lm.j == j {
                return 'o';
            }
            let in_k = if mu.rho { k >= lm.k } else { k == lm.k };
            let in_j = if mu.sigma { j >= lm.j } else { j == lm.j };
            if in_k && in_j {
                return match (mu.rho, mu.sigma) {
                    (true, true) => '#',
                    (false, true) => '|',
                    _ => '-',
                };
            }
        }
        '.'
    }
}

pub fn ascii(c: &Cones) -> String {
    let mut out = String::new();
    let (r, s) = &c.names;
    for &sheet in &c.sheets {
        let _ = writeln!(out, "k{}  ({r} right, {s} up)", sheet + 1);
        for j in (0..=c.j_max).rev() {
            let _ = write!(out, "{j:>3} |");
            for k in 0..=c.k_max {
                let _ = write!(out, " {}", c.mark(sheet, k, j));
            }
            out.push('\n');
        }
        let _ = write!(out, "    +");
        for _ in 0..=c.k_max {
            out.push_str("--");
        }
        out.push('\n');
        let _ = write!(out, "     ");
        for k in 0..=c.k_max {
            let _ = write!(out, " {}", k % 10);
        }
        out.push('\n');
    }
    out
}

const CELL: u32 = 40;
const PAD: u32 = 40;

pub fn svg(c: &Cones) -> String {
    let pw = (c.k_max + 1) * CELL + 2 * PAD;
    let ph = (c.j_max + 1) * CELL + 2 * PAD;
    let width = pw * c.sheets.len() as u32;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{ph}" viewBox="0 0 {width} {ph}" font-family="sans-serif" font-size="12">"#
    );
    for (panel, &sheet) in c.sheets.iter().enumerate() {
        let ox = panel as u32 * pw + PAD;
        let oy = ph - PAD;
        let x = |k: u32| ox + k * CELL;
        let y = |j: u32| oy - j * CELL;
        let (right, top) = (x(c.k_max) + CELL / 2, y(c.j_max) - CELL / 2);
        let _ = writeln!(out, r#"<g id="k{}">"#, sheet + 1);
        for (lm, mu) in c.cones.iter().filter(|(m, _)| m.sheet == sheet) {
            if mu.rho && mu.sigma {
                let _ = writeln!(
                    out,
                    r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#d0d0d0"/>"##,
                    x(lm.k),
                    top,
                    right - x(lm.k),
                    y(lm.j) - top
                );
            }
        }
        for k in 0..=c.k_max {
            let _ = writeln!(out, r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#eeeeee"/>"##, x(k), y(0), top);
        }
        for j in 0..=c.j_max {
            let _ = writeln!(out, r##"<line x1="{}" y1="{2}" x2="{}" y2="{2}" stroke="#eeeeee"/>"##, x(0), right, y(j));
        }
        let _ = writeln!(out, r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/>"#, x(0), y(0), right);
        let _ = writeln!(out, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>"#, x(0), y(0), top);
        let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, right + 4, y(0) + 4, c.names.0);
        let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, x(0) - 4, top - 6, c.names.1);
        let _ = writeln!(out, r#"<text x="{}" y="{}">k{}</text>"#, x(0), y(0) + 28, sheet + 1);
        for k in 0..=c.k_max {
            for j in 0..=c.j_max {
                if c.mark(sheet, k, j) == '.' {
                    let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="2" fill="#888888"/>"##, x(k), y(j));
                }
            }
        }
        for (idx, (lm, mu)) in c.cones.iter().enumerate().filter(|(_, (m, _))| m.sheet == sheet) {
            match (mu.rho, mu.sigma) {
                (false, true) => {
                    let _ = writeln!(out, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black" stroke-width="3"/>"#, x(lm.k), y(lm.j), top);
                }
                (true, false) => {
                    let _ = writeln!(out, r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black" stroke-width="3"/>"#, x(lm.k), y(lm.j), right);
                }
                _ => {}
            }
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="5" fill="black"/>"#, x(lm.k), y(lm.j));
            let _ = writeln!(out, r#"<text x="{}" y="{}">p{}</text>"#, x(lm.k) + 7, y(lm.j) - 7, idx + 1);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Cones {
        Cones {
            names: ("tau".into(), "t".into()),
            sheets: vec![1, 0],
            cones: vec![
                (Monomial::new(1, 0, 1), Mult::SIGMA),
                (Monomial::new(0, 1, 0), Mult::FULL),
            ],
            k_max: 2,
            j_max: 3,
        }
    }

    #[test]
    fn ascii_marks() {
        let a = ascii(&sample());
        let lines: Vec<&str> = a.lines().collect();
        assert_eq!(lines[0], "k2  (tau right, t up)");
        assert_eq!(lines[1], "  3 | | . .");
        assert_eq!(lines[3], "  1 | o . .");
        assert_eq!(lines[4], "  0 | . . .");
        assert!(a.contains("  0 | . o #"));
    }

    #[test]
    fn svg_is_well_formed() {
        let s = svg(&sample());
        assert!(s.starts_with("<svg"));
        assert_eq!(s.matches("<g ").count(), 2);
        assert_eq!(s.matches("<rect").count(), 1);
        assert!(s.trim_end().ends_with("</svg>"));
    }
}
