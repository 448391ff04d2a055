//! Static SVG: predicted curves under the computed zeros.

use std::fmt::Write as _;

use faber_core::report::CurveRow;
use faber_core::Complex64;

const WIDTH: f64 = 800.0;

struct Style {
    stroke: &'static str,
    width: f64,
    dash: Option<&'static str>,
}

fn style(component: &str) -> Style {
    let (stroke, width, dash) = match component {
        "airfoil" => ("#000000", 1.5, None),
        "arc_plus" | "arc_minus" => ("#1f5fbf", 1.2, None),
        "cb" => ("#2a9d3a", 1.0, Some("6 4")),
        "ctilde" => ("#888888", 1.0, Some("2 3")),
        "segment" => ("#e07b00", 2.0, None),
        "loop" => ("#c0392b", 2.0, None),
        _ => ("#d98cb3", 1.0, Some("4 4")),
    };
    Style {
        stroke,
        width,
        dash,
    }
}

/// Bounding box of the parts that frame the picture; `ℒ_b⁻` may run off it.
fn bounds(curves: &[CurveRow], zeros: &[Complex64]) -> (f64, f64, f64, f64) {
    let framing = curves
        .iter()
        .filter(|r| !r.component.starts_with("loop_minus") && r.component != "ctilde")
        .map(|r| r.z)
        .chain(zeros.iter().copied());
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for z in framing {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    let pad = 0.08 * (x1 - x0).max(y1 - y0);
    (x0 - pad, x1 + pad, y0 - pad, y1 + pad)
}

fn coord(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

pub fn render(title: &str, curves: &[CurveRow], zeros: &[Complex64]) -> String {
    let (x0, x1, y0, y1) = bounds(curves, zeros);
    let scale = WIDTH / (x1 - x0);
    let height = ((y1 - y0) * scale).ceil();
    let px = |z: Complex64| ((z.re - x0) * scale, (y1 - z.im) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        coord(WIDTH),
        coord(height),
        coord(WIDTH),
        coord(height)
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(
        out,
        "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>"
    );
    // real axis
    if y0 < 0.0 && y1 > 0.0 {
        let (_, ay) = px(Complex64::new(0.0, 0.0));
        let _ = writeln!(
            out,
            "<line x1=\"0.0000\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\" stroke-width=\"0.8\"/>",
            coord(ay),
            coord(WIDTH),
            coord(ay)
        );
    }

    let mut start = 0;
    while start < curves.len() {
        let name = &curves[start].component;
        let end = start
            + curves[start..]
                .iter()
                .take_while(|r| &r.component == name)
                .count();
        let st = style(name);
        let mut d = String::new();
        for (i, r) in curves[start..end].iter().enumerate() {
            let (x, y) = px(r.z);
            let _ = write!(
                d,
                "{}{},{}",
                if i == 0 { "M" } else { " L" },
                coord(x),
                coord(y)
            );
        }
        if matches!(name.as_str(), "airfoil" | "cb" | "ctilde") {
            d.push_str(" Z");
        }
        let dash = st
            .dash
            .map(|p| format!(" stroke-dasharray=\"{p}\""))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "<path class=\"{name}\" d=\"{d}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{dash}/>",
            st.stroke, st.width
        );
        start = end;
    }

    let _ = writeln!(out, "<g class=\"zeros\" fill=\"#111111\">");
    for &z in zeros {
        let (x, y) = px(z);
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"2.2\"/>",
            coord(x),
            coord(y)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
