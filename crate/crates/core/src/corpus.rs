//! Named reference instances: polygons with known structure and a mixed
//! collection of paths (segments, arcs, polylines, involute chains) for
//! cross-checking the verifiers and deciders.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::gen::{generate, GenKind};
use crate::geom::{validate_polygon, Point, Polygon};
use crate::involute::InvolutePiece;
use crate::path::{PathPiece, SAPath};
use crate::shortest::{shortest_sa_path, SAPathResult};

fn poly(v: &[(f64, f64)]) -> Polygon {
    validate_polygon(&v.iter().map(|&(x, y)| Point::new(x, y)).collect::<Vec<_>>()).expect("corpus polygon is valid")
}

/// The single-slot U: not self-approaching.
pub fn u_polygon() -> Polygon {
    poly(&[(0., 0.), (3., 0.), (3., 3.), (2., 3.), (2., 1.), (1., 1.), (1., 3.), (0., 3.)])
}

pub fn square() -> Polygon {
    poly(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])
}

fn regular(n: usize, r: f64) -> Polygon {
    let v: Vec<Point> = (0..n).map(|i| Point::from_polar(r, TAU * i as f64 / n as f64)).collect();
    validate_polygon(&v).expect("regular polygon is valid")
}

/// Hand-made and generated polygons covering convex, orthogonal, slotted,
/// spiral and notched shapes.
pub fn polygons() -> Vec<(String, Polygon)> {
    let mut out: Vec<(String, Polygon)> = vec![
        ("square".into(), square()),
        ("triangle".into(), poly(&[(0., 0.), (4., 1.), (1., 3.)])),
        ("hexagon".into(), regular(6, 1.0)),
        ("ell".into(), poly(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)])),
        ("u".into(), u_polygon()),
        ("sharp-reflex".into(), poly(&[(0., 0.), (4., 0.), (4., 4.), (2., 4.), (2., 1.), (1., 3.), (0., 3.)])),
        ("shallow-notch".into(), poly(&[(0., 0.), (2., 0.5), (4., 0.), (4., 3.), (0., 3.)])),
        ("staircase".into(), poly(&[(0., 0.), (3., 0.), (3., 1.), (2., 1.), (2., 2.), (1., 2.), (1., 3.), (0., 3.)])),
        (
            "zigzag".into(),
            poly(&[
                (0., 0.),
                (6., 0.),
                (6., 3.),
                (5., 3.),
                (5., 1.),
                (4., 1.),
                (4., 3.),
                (3., 3.),
                (3., 1.),
                (2., 1.),
                (2., 3.),
                (0., 3.),
            ]),
        ),
        (
            "cross".into(),
            poly(&[
                (1., 0.),
                (2., 0.),
                (2., 1.),
                (3., 1.),
                (3., 2.),
                (2., 2.),
                (2., 3.),
                (1., 3.),
                (1., 2.),
                (0., 2.),
                (0., 1.),
                (1., 1.),
            ]),
        ),
    ];
    for (kind, sizes) in [
        (GenKind::Convex, &[5usize, 8, 12][..]),
        (GenKind::Comb, &[8, 16, 32]),
        (GenKind::Spiral, &[8, 16, 32]),
        (GenKind::Hook, &[8, 16, 32]),
        (GenKind::Random, &[6, 8, 10, 12]),
    ] {
        for &n in sizes {
            for seed in 0..2 {
                let inst = generate(kind, n, seed).expect("generator accepts corpus sizes");
                out.push((inst.name.clone(), inst.polygon().expect("generated polygon is valid")));
            }
        }
    }
    out
}

fn line(a: Point, b: Point) -> PathPiece {
    PathPiece::Line { from: a, to: b }
}

fn random_involute(rng: &mut ChaCha8Rng) -> InvolutePiece {
    let k = rng.gen_range(0..4);
    let lo = rng.gen_range(0.0..PI);
    InvolutePiece {
        r0: rng.gen_range(0.2..2.0),
        center: Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        phase: rng.gen_range(0.0..TAU),
        reflect: if rng.gen() { 1.0 } else { -1.0 },
        coeffs: (0..k).map(|_| rng.gen_range(-1.0..3.0)).collect(),
        theta: [lo, lo + rng.gen_range(0.2..2.5)],
        dir: if rng.gen() { 1.0 } else { -1.0 },
    }
}

/// At least `count` paths: fixed cases first, then seeded random segments,
/// arcs, polylines, involute pieces and chains, and pieces of constructed
/// shortest paths (with their reversals).
pub fn paths(count: usize, seed: u64) -> Vec<(String, SAPath)> {
    let p = Point::new;
    let mut out = vec![
        ("right-angle-bend".to_string(), SAPath::polyline(&[p(0., 0.), p(1., 0.), p(1., 1.)])),
        ("fold-back".to_string(), SAPath::polyline(&[p(0., 0.), p(2., 0.), p(0.5, 0.5)])),
        ("segment".to_string(), SAPath::polyline(&[p(0., 0.), p(1., 2.)])),
        (
            "half-circle".to_string(),
            SAPath::new(p(1., 0.), p(-1., 0.), vec![PathPiece::Curve(InvolutePiece::arc(p(0., 0.), 1.0, 0.0, PI))])
                .expect("arc is continuous"),
        ),
    ];
    // Shortest paths on notched rooms: whole, reversed, heads and tails.
    for n in [8, 16, 32] {
        let inst = generate(GenKind::Hook, n, 0).expect("hook instance");
        let pg = inst.polygon().expect("hook polygon");
        if let Ok(SAPathResult::Path { path }) = shortest_sa_path(&pg, inst.s.unwrap(), inst.t.unwrap()) {
            let m = path.pieces.len();
            out.push((format!("hook-{n}"), path.clone()));
            out.push((format!("hook-{n}-reversed"), path.reversed()));
            for a in 0..m {
                out.push((format!("hook-{n}-tail-{a}"), path.subpath(a..m)));
                out.push((format!("hook-{n}-head-{a}"), path.subpath(0..a + 1)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut i = 0usize;
    while out.len() < count {
        let pt = |rng: &mut ChaCha8Rng| p(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let (name, path) = match i % 5 {
            0 => ("segment", SAPath::polyline(&[pt(&mut rng), pt(&mut rng)])),
            1 => {
                // Arcs up to 1.5 turns of a half circle: self-approaching iff
                // the sweep is at most π.
                let sweep = if rng.gen() { rng.gen_range(0.1..0.9) * PI } else { rng.gen_range(1.1..1.5) * PI };
                let a0 = rng.gen_range(0.0..TAU);
                let dir = if rng.gen() { 1.0 } else { -1.0 };
                let arc = InvolutePiece::arc(pt(&mut rng), rng.gen_range(0.3..2.0), a0, a0 + dir * sweep);
                let (s, t) = (arc.start_point(), arc.end_point());
                ("arc", SAPath::new(s, t, vec![PathPiece::Curve(arc)]).expect("arc is continuous"))
            }
            2 => {
                // Polylines turning by random angles, some beyond 90°.
                let k = rng.gen_range(2..6);
                let mut pts = vec![pt(&mut rng)];
                let mut heading = rng.gen_range(0.0..TAU);
                for _ in 0..k {
                    let last = *pts.last().unwrap();
                    pts.push(last + Point::from_polar(rng.gen_range(0.3..2.0), heading));
                    heading += rng.gen_range(-1.3..1.3) * FRAC_PI_2;
                }
                ("polyline", SAPath::polyline(&pts))
            }
            3 => {
                let c = random_involute(&mut rng);
                let (s, t) = (c.start_point(), c.end_point());
                ("involute", SAPath::new(s, t, vec![PathPiece::Curve(c)]).expect("single piece"))
            }
            _ => {
                // An involute piece leaving along its end tangent.
                let c = random_involute(&mut rng);
                let (s, e) = (c.start_point(), c.end_point());
                let dir = c.tangent_at(c.end_theta());
                let t = e + dir * rng.gen_range(0.2..2.0);
                ("involute-chain", SAPath::new(s, t, vec![PathPiece::Curve(c), line(e, t)]).expect("continuous"))
            }
        };
        out.push((format!("{name}-{i}"), path));
        i += 1;
    }
    out
}
