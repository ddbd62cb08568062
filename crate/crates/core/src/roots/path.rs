use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

/// One piece of a path in the parameter plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    Segment {
        from: Complex64,
        to: Complex64,
    },
    /// `center + radius · e^{i(start + u·sweep)}` for `u ∈ [0, 1]`;
    /// positive sweep is counterclockwise.
    Arc {
        center: Complex64,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl Piece {
    pub fn at(&self, u: f64) -> Complex64 {
        match *self {
            Piece::Segment { from, to } => from + (to - from) * u,
            Piece::Arc {
                center,
                radius,
                start,
                sweep,
            } => center + Complex64::from_polar(radius, start + u * sweep),
        }
    }

    pub fn start(&self) -> Complex64 {
        self.at(0.0)
    }

    pub fn end(&self) -> Complex64 {
        match *self {
            Piece::Segment { to, .. } => to,
            _ => self.at(1.0),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Piece::Segment { from, to } => (to - from).norm(),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    pub fn reversed(&self) -> Piece {
        match *self {
            Piece::Segment { from, to } => Piece::Segment { from: to, to: from },
            Piece::Arc {
                center,
                radius,
                start,
                sweep,
            } => Piece::Arc {
                center,
                radius,
                start: start + sweep,
                sweep: -sweep,
            },
        }
    }
}

/// A piecewise path of segments and circular arcs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Path {
    pieces: Vec<Piece>,
}

impl Path {
    pub fn new(pieces: Vec<Piece>) -> Self {
        assert!(!pieces.is_empty(), "empty path");
        for w in pieces.windows(2) {
            let gap = (w[0].end() - w[1].start()).norm();
            assert!(
                gap <= 1e-9 * w[0].end().norm().max(1.0),
                "path pieces do not join (gap {gap:e})"
            );
        }
        Path { pieces }
    }

    /// Segment from `base` to the circle of `radius` about `center`, one
    /// full counterclockwise turn, and back along the same segment.
    pub fn keyhole(base: Complex64, center: Complex64, radius: f64) -> Self {
        let dir = (base - center) / (base - center).norm();
        let touch = center + dir * radius;
        Path::new(vec![
            Piece::Segment {
                from: base,
                to: touch,
            },
            Piece::Arc {
                center,
                radius,
                start: dir.arg(),
                sweep: TAU,
            },
            Piece::Segment {
                from: touch,
                to: base,
            },
        ])
    }

    /// Counterclockwise circle through `base` about `center`.
    pub fn circle(base: Complex64, center: Complex64) -> Self {
        let v = base - center;
        Path::new(vec![Piece::Arc {
            center,
            radius: v.norm(),
            start: v.arg(),
            sweep: TAU,
        }])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn start(&self) -> Complex64 {
        self.pieces[0].start()
    }

    pub fn end(&self) -> Complex64 {
        self.pieces[self.pieces.len() - 1].end()
    }

    pub fn is_closed(&self) -> bool {
        (self.start() - self.end()).norm() <= 1e-9 * self.start().norm().max(1.0)
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(Piece::length).sum()
    }

    pub fn reversed(&self) -> Self {
        Path {
            pieces: self.pieces.iter().rev().map(Piece::reversed).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Path) -> Self {
        Path::new(self.pieces.iter().chain(&other.pieces).copied().collect())
    }

    /// Smallest distance from the path to `p`.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        self.pieces
            .iter()
            .map(|piece| match *piece {
                Piece::Segment { from, to } => segment_distance(from, to, p),
                Piece::Arc {
                    center,
                    radius,
                    sweep,
                    ..
                } if sweep.abs() >= TAU => ((p - center).norm() - radius).abs(),
                // partial arcs: sampled, which is enough for clearance checks
                Piece::Arc { .. } => (0..=256)
                    .map(|k| (piece.at(k as f64 / 256.0) - p).norm())
                    .fold(f64::INFINITY, f64::min),
            })
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let u = ((p - a) * ab.conj()).re / len2;
    (a + ab * u.clamp(0.0, 1.0) - p).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn keyhole_is_closed() {
        let p = Path::keyhole(c(3.0, 0.0), c(1.0, 0.0), 0.5);
        assert!(p.is_closed());
        assert!((p.pieces()[0].end() - c(1.5, 0.0)).norm() < 1e-15);
        assert!((p.length() - (1.5 * 2.0 + 0.5 * TAU)).abs() < 1e-12);
        assert!((p.distance_to(c(1.0, 0.0)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reversal_and_concatenation() {
        let p = Path::keyhole(c(0.0, 2.0), c(0.0, 0.0), 1.0);
        let r = p.reversed();
        assert_eq!(r.start(), p.end());
        assert!((r.pieces()[1].at(0.25) - p.pieces()[1].at(0.75)).norm() < 1e-14);
        let pp = p.concat(&p);
        assert_eq!(pp.pieces().len(), 6);
    }

    #[test]
    fn segment_distances() {
        assert!((segment_distance(c(0.0, 0.0), c(2.0, 0.0), c(1.0, 1.0)) - 1.0).abs() < 1e-15);
        assert!((segment_distance(c(0.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)) - 1.0).abs() < 1e-15);
    }
}
