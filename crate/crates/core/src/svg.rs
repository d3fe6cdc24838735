//! Static SVG rendering of a shadow representation. Rendering is purely
//! cosmetic: coordinates go through f64 here and nowhere else.

use crate::model::ShadowRepresentation;
use num::ToPrimitive;

fn f(r: &crate::rational::Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Emit an SVG document: one `line` per segment, one `circle` per point,
/// and, when `shadows` is set, a dotted boundary path per element (the
/// vertical edge down from the right end and the unit-slope edge down
/// from the left end).
pub fn render_svg(rep: &ShadowRepresentation, shadows: bool) -> String {
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let mut upd = |x: f64, y: f64| {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    };
    for (_, p) in &rep.points {
        upd(f(&p.x), f(&p.y));
    }
    for (_, s) in &rep.segments {
        upd(f(&s.left().x), f(&s.left().y));
        upd(f(&s.right().x), f(&s.right().y));
    }
    if !min_x.is_finite() {
        min_x = 0.0;
        max_x = 1.0;
        min_y = 0.0;
        max_y = 1.0;
    }
    let pad = ((max_x - min_x) + (max_y - min_y)).max(1.0) * 0.15;
    let (x0, y0) = (min_x - pad, min_y - pad);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    let scale = 640.0 / w.max(1e-9);
    let tx = |x: f64| (x - x0) * scale;
    // flip y so larger y renders higher
    let ty = |y: f64| (h - (y - y0)) * scale;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.2} {:.2}\">\n",
        640.0,
        (h * scale).ceil(),
        640.0,
        h * scale
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if shadows {
        let floor = ty(y0);
        for (_, s) in &rep.segments {
            let (rx, ry) = (tx(f(&s.right().x)), ty(f(&s.right().y)));
            let (lx, ly) = (tx(f(&s.left().x)), ty(f(&s.left().y)));
            let drop = (floor - ly).max(0.0);
            out.push_str(&format!(
                "<path d=\"M {rx:.2} {ry:.2} L {rx:.2} {floor:.2}\" stroke=\"#888\" stroke-dasharray=\"4 3\" fill=\"none\"/>\n"
            ));
            out.push_str(&format!(
                "<path d=\"M {lx:.2} {ly:.2} l {:.2} {:.2}\" stroke=\"#888\" stroke-dasharray=\"4 3\" fill=\"none\"/>\n",
                -drop, drop
            ));
        }
        for (_, p) in &rep.points {
            let (px, py) = (tx(f(&p.x)), ty(f(&p.y)));
            let drop = (floor - py).max(0.0);
            out.push_str(&format!(
                "<path d=\"M {px:.2} {py:.2} L {px:.2} {floor:.2}\" stroke=\"#bbb\" stroke-dasharray=\"2 3\" fill=\"none\"/>\n"
            ));
            out.push_str(&format!(
                "<path d=\"M {px:.2} {py:.2} l {:.2} {:.2}\" stroke=\"#bbb\" stroke-dasharray=\"2 3\" fill=\"none\"/>\n",
                -drop, drop
            ));
        }
    }
    for (id, s) in &rep.segments {
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"2\"/>\n",
            tx(f(&s.left().x)),
            ty(f(&s.left().y)),
            tx(f(&s.right().x)),
            ty(f(&s.right().y))
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>\n",
            tx(f(&s.left().x)),
            ty(f(&s.left().y)) - 4.0,
            id
        ));
    }
    for (id, p) in &rep.points {
        out.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"crimson\"/>\n",
            tx(f(&p.x)),
            ty(f(&p.y))
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>\n",
            tx(f(&p.x)) + 5.0,
            ty(f(&p.y)) - 4.0,
            id
        ));
    }
    out.push_str("</svg>\n");
    out
}
