//! Static SVG rendering of valence schemes.

use std::fmt::Write;

use crate::diagram::ValenceScheme;

const SIZE: f64 = 320.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 120.0;
const LABEL_RADIUS: f64 = 142.0;
/// Spacing between parallel bonds, measured at the chord midpoint.
const PARALLEL_GAP: f64 = 14.0;

fn position(v: usize, n: usize, radius: f64) -> (f64, f64) {
    // Vertex 1 at twelve o'clock, then clockwise (y grows downwards).
    let angle = -std::f64::consts::FRAC_PI_2
        + 2.0 * std::f64::consts::PI * (v - 1) as f64 / n as f64;
    (CENTER + radius * angle.cos(), CENTER + radius * angle.sin())
}

/// Renders `g` as `n` labelled points clockwise on a circle with one chord
/// per bond. Parallel bonds become quadratic curves bowed symmetrically
/// around the straight chord. The output depends only on `g`.
pub fn render_svg(g: &ValenceScheme) -> String {
    let n = g.n();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", g.to_text());
    let _ = writeln!(
        s,
        r##"<circle cx="{CENTER:.2}" cy="{CENTER:.2}" r="{RADIUS:.2}" fill="none" stroke="#cccccc" stroke-dasharray="4 4"/>"##
    );

    let edges = g.edges();
    let mut k = 0;
    while k < edges.len() {
        let e = edges[k];
        let copies = edges[k..].iter().take_while(|f| **f == e).count();
        let (x1, y1) = position(e.i(), n, RADIUS);
        let (x2, y2) = position(e.j(), n, RADIUS);
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt().max(1e-9);
        let (nx, ny) = (-(y2 - y1) / len, (x2 - x1) / len);
        for c in 0..copies {
            let offset = (c as f64 - (copies - 1) as f64 / 2.0) * PARALLEL_GAP;
            let class = format!("bond e{}-{}", e.i(), e.j());
            if copies == 1 {
                let _ = writeln!(
                    s,
                    r##"<path class="{class}" d="M {x1:.2} {y1:.2} L {x2:.2} {y2:.2}" fill="none" stroke="#1f4e79" stroke-width="2"/>"##
                );
            } else {
                // The control point sits at twice the desired midpoint offset.
                let (cx, cy) = (mx + 2.0 * offset * nx, my + 2.0 * offset * ny);
                let _ = writeln!(
                    s,
                    r##"<path class="{class}" d="M {x1:.2} {y1:.2} Q {cx:.2} {cy:.2} {x2:.2} {y2:.2}" fill="none" stroke="#1f4e79" stroke-width="2"/>"##
                );
            }
        }
        k += copies;
    }

    for v in 1..=n {
        let (x, y) = position(v, n, RADIUS);
        let (lx, ly) = position(v, n, LABEL_RADIUS);
        let _ = writeln!(
            s,
            r##"<circle class="atom" cx="{x:.2}" cy="{y:.2}" r="5" fill="#000000"/>"##
        );
        let _ = writeln!(
            s,
            r#"<text x="{lx:.2}" y="{ly:.2}" text-anchor="middle" dominant-baseline="middle" font-family="sans-serif" font-size="14">{v}</text>"#
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str, needle: &str) -> usize {
        s.matches(needle).count()
    }

    #[test]
    fn empty_diagram() {
        let svg = render_svg(&ValenceScheme::empty(3).unwrap());
        assert_eq!(count(&svg, r#"class="atom""#), 3);
        assert_eq!(count(&svg, "<path"), 0);
        assert!(svg.contains(">3</text>"));
    }

    #[test]
    fn two_chords() {
        let g = ValenceScheme::from_pairs(4, &[(1, 2), (3, 4)]).unwrap();
        let svg = render_svg(&g);
        assert_eq!(count(&svg, r#"class="atom""#), 4);
        assert_eq!(count(&svg, "<path"), 2);
        assert_eq!(count(&svg, " L "), 2);
    }

    #[test]
    fn double_bond_is_two_offset_curves() {
        let g = ValenceScheme::from_pairs(2, &[(1, 2), (1, 2)]).unwrap();
        let svg = render_svg(&g);
        assert_eq!(count(&svg, r#"class="atom""#), 2);
        assert_eq!(count(&svg, " Q "), 2);
        let paths: Vec<&str> = svg.lines().filter(|l| l.starts_with("<path")).collect();
        assert_ne!(paths[0], paths[1]);
    }

    #[test]
    fn deterministic_and_well_formed() {
        let g = ValenceScheme::from_pairs(5, &[(1, 4), (2, 3), (2, 3), (4, 5)]).unwrap();
        let a = render_svg(&g);
        assert_eq!(a, render_svg(&g));
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert!(render_svg(&ValenceScheme::empty(1).unwrap()).contains(">1</text>"));
    }
}
