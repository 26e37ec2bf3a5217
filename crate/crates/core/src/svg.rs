//! SVG figures: polygon outline, path pieces coloured by kind and
//! involute order, and witness overlays. Curves are drawn as sampled
//! polylines so every order renders the same way.

use std::fmt::Write as _;
use thiserror::Error;

use crate::geom::{Point, Polygon};
use crate::path::{PathPiece, SAPath};
use crate::shortest::Witness;

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("sample density must be at least 8 per piece (got {0})")]
    TooFewSamples(usize),
    #[error("nothing to render")]
    Empty,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub samples_per_piece: usize,
    pub segment_color: String,
    /// Order-0 involutes (circular arcs).
    pub arc_color: String,
    /// Colours for orders 1, 2, 3 and above; the last repeats.
    pub involute_colors: Vec<String>,
    pub polygon_color: String,
    pub witness_color: String,
    pub stroke_width: f64,
    /// Output width in pixels; the height follows the aspect ratio.
    pub width_px: f64,
    /// Margin around the content, as a fraction of its larger extent.
    pub margin: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            samples_per_piece: 48,
            segment_color: "#2e9b3a".into(),
            arc_color: "#8e3fb5".into(),
            involute_colors: vec!["#e07b17".into(), "#c62828".into(), "#6d4c41".into()],
            polygon_color: "#202020".into(),
            witness_color: "#1565c0".into(),
            stroke_width: 1.5,
            width_px: 800.0,
            margin: 0.05,
        }
    }
}

impl RenderSpec {
    pub fn color_for(&self, piece: &PathPiece) -> &str {
        match piece {
            PathPiece::Line { .. } => &self.segment_color,
            PathPiece::Curve(c) if c.order() == 0 => &self.arc_color,
            PathPiece::Curve(c) => {
                let i = (c.order() - 1).min(self.involute_colors.len().saturating_sub(1));
                self.involute_colors.get(i).map_or(&self.arc_color, String::as_str)
            }
        }
    }
}

/// Axis-aligned viewport in world coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub min: Point,
    pub max: Point,
}

impl Viewport {
    fn around(points: &[Point], margin: f64) -> Option<Viewport> {
        let mut it = points.iter().filter(|p| p.is_finite());
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for p in it {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let pad = margin * (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        Some(Viewport { min: lo - Point::new(pad, pad), max: hi + Point::new(pad, pad) })
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.min.x..=self.max.x).contains(&p.x) && (self.min.y..=self.max.y).contains(&p.y)
    }
}

/// A rendered figure with the world points it draws.
#[derive(Clone, Debug)]
pub struct Figure {
    pub svg: String,
    pub viewport: Viewport,
    pub points: Vec<Point>,
}

struct Layer {
    color: String,
    width: f64,
    closed: bool,
    dashed: bool,
    points: Vec<Point>,
}

fn sample_piece(p: &PathPiece, n: usize) -> Vec<Point> {
    match p {
        PathPiece::Line { from, to } => vec![*from, *to],
        PathPiece::Curve(_) => (0..=n).map(|i| p.point_at_param(i as f64 / n as f64)).collect(),
    }
}

fn witness_layers(w: &Witness, spec: &RenderSpec) -> Vec<Layer> {
    let n = spec.samples_per_piece;
    let layer = |points: Vec<Point>, closed: bool, dashed: bool| Layer {
        color: spec.witness_color.clone(),
        width: spec.stroke_width,
        closed,
        dashed,
        points,
    };
    match w {
        Witness::DeadPoint { point, tangent_point, hull, .. } => {
            vec![layer(hull.polyline(n), true, true), layer(vec![*point, *tangent_point], false, false)]
        }
        Witness::Separation { point, region, probe } => {
            vec![layer(region.polyline(n), false, false), layer(vec![*point, *probe], false, true)]
        }
    }
}

fn fmt_num(x: f64) -> String {
    // Shortest round-trip form keeps the file exact and compact.
    format!("{x}")
}

/// Renders the polygon with an optional path and witness overlay.
pub fn render(
    poly: &Polygon,
    path: Option<&SAPath>,
    witness: Option<&Witness>,
    spec: &RenderSpec,
) -> Result<Figure, RenderError> {
    if spec.samples_per_piece < 8 {
        return Err(RenderError::TooFewSamples(spec.samples_per_piece));
    }
    let mut layers = vec![Layer {
        color: spec.polygon_color.clone(),
        width: spec.stroke_width,
        closed: true,
        dashed: false,
        points: poly.vertices().to_vec(),
    }];
    let mut marks = Vec::new();
    if let Some(path) = path {
        for piece in &path.pieces {
            layers.push(Layer {
                color: spec.color_for(piece).to_string(),
                width: 2.0 * spec.stroke_width,
                closed: false,
                dashed: false,
                points: sample_piece(piece, spec.samples_per_piece),
            });
        }
        marks.extend([path.source, path.target]);
    }
    if let Some(w) = witness {
        layers.extend(witness_layers(w, spec));
        let p = match w {
            Witness::DeadPoint { point, .. } | Witness::Separation { point, .. } => *point,
        };
        marks.push(p);
    }
    let points: Vec<Point> =
        layers.iter().flat_map(|l| l.points.iter().copied()).chain(marks.iter().copied()).collect();
    let vp = Viewport::around(&points, spec.margin).ok_or(RenderError::Empty)?;
    let (w, h) = (vp.max.x - vp.min.x, vp.max.y - vp.min.y);
    let height_px = spec.width_px * h / w;
    // Scale strokes from pixels to world units.
    let unit = w / spec.width_px;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        fmt_num(spec.width_px),
        fmt_num(height_px),
        fmt_num(vp.min.x),
        fmt_num(-vp.max.y),
        fmt_num(w),
        fmt_num(h)
    );
    for l in &layers {
        let pts: Vec<String> = l.points.iter().map(|p| format!("{},{}", fmt_num(p.x), fmt_num(-p.y))).collect();
        let tag = if l.closed { "polygon" } else { "polyline" };
        let dash = if l.dashed { format!(r#" stroke-dasharray="{}""#, fmt_num(4.0 * unit)) } else { String::new() };
        let _ = writeln!(
            svg,
            r#"  <{tag} points="{}" fill="none" stroke="{}" stroke-width="{}" stroke-linejoin="round"{dash}/>"#,
            pts.join(" "),
            l.color,
            fmt_num(l.width * unit)
        );
    }
    for m in &marks {
        let _ = writeln!(
            svg,
            r#"  <circle cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            fmt_num(m.x),
            fmt_num(-m.y),
            fmt_num(3.0 * unit),
            spec.polygon_color
        );
    }
    svg.push_str("</svg>\n");
    Ok(Figure { svg, viewport: vp, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{square, u_polygon};
    use crate::shortest::{shortest_sa_path, SAPathResult};

    fn parse_points(attr: &str) -> Vec<Point> {
        attr.split_whitespace()
            .map(|xy| {
                let (x, y) = xy.split_once(',').unwrap();
                Point::new(x.parse().unwrap(), -y.parse::<f64>().unwrap())
            })
            .collect()
    }

    /// Well-formed XML and every drawn point inside the viewBox.
    fn check(fig: &Figure) {
        let doc = roxmltree::Document::parse(&fig.svg).expect("well-formed SVG");
        let vb: Vec<f64> =
            doc.root_element().attribute("viewBox").unwrap().split(' ').map(|v| v.parse().unwrap()).collect();
        let vp = Viewport { min: Point::new(vb[0], -vb[1] - vb[3]), max: Point::new(vb[0] + vb[2], -vb[1]) };
        let mut n = 0;
        for node in doc.descendants().filter(|n| n.has_attribute("points")) {
            for p in parse_points(node.attribute("points").unwrap()) {
                assert!(vp.contains(p), "{p} outside {vp:?}");
                n += 1;
            }
        }
        assert!(n >= 3);
        assert!(fig.points.iter().all(|&p| fig.viewport.contains(p)));
    }

    #[test]
    fn polygon_only() {
        let fig = render(&square(), None, None, &RenderSpec::default()).unwrap();
        check(&fig);
        assert!(fig.svg.contains("<polygon"));
    }

    #[test]
    fn path_overlay_colours_by_kind() {
        let inst = crate::gen::generate(crate::gen::GenKind::Hook, 16, 0).unwrap();
        let pg = inst.polygon().unwrap();
        let SAPathResult::Path { path } = shortest_sa_path(&pg, inst.s.unwrap(), inst.t.unwrap()).unwrap() else {
            panic!("hook instance has a path")
        };
        let spec = RenderSpec::default();
        let fig = render(&pg, Some(&path), None, &spec).unwrap();
        check(&fig);
        assert!(fig.svg.contains(&spec.segment_color));
        assert!(path.pieces.iter().all(|p| fig.svg.contains(spec.color_for(p))));
    }

    #[test]
    fn witness_overlay() {
        let pg = u_polygon();
        let r = shortest_sa_path(&pg, Point::new(0.5, 2.5), Point::new(2.5, 2.5)).unwrap();
        let SAPathResult::NotReachable { witness } = r else { panic!("U is not traversable") };
        let fig = render(&pg, None, Some(&witness), &RenderSpec::default()).unwrap();
        check(&fig);
        assert!(fig.svg.contains(&RenderSpec::default().witness_color));
    }

    #[test]
    fn sample_density_floor() {
        let spec = RenderSpec { samples_per_piece: 4, ..RenderSpec::default() };
        assert_eq!(render(&square(), None, None, &spec).unwrap_err(), RenderError::TooFewSamples(4));
    }
}
