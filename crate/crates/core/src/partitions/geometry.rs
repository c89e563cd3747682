//! French drawings with anisotropic boxes and their Russian-coordinate
//! profiles.

use std::fmt::Debug;
use std::io::{Read, Write};

use num_traits::{One, Signed, Zero};

use super::Partition;
use crate::algebra::{Field, Rational};
use crate::error::{Error, Result};

/// Coordinate type for profiles: exact rationals or floats.
pub trait Coord: Field + PartialOrd + Debug {
    fn abs(&self) -> Self;
    fn is_unit(&self) -> bool;
    fn from_f64_lossy(x: f64) -> Self;
}

impl Coord for Rational {
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_unit(&self) -> bool {
        One::is_one(self)
    }
    fn from_f64_lossy(x: f64) -> Self {
        Rational::from_float(x).unwrap_or_else(Rational::zero)
    }
}

impl Coord for f64 {
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_unit(&self) -> bool {
        (self - 1.0).abs() <= 1e-12
    }
    fn from_f64_lossy(x: f64) -> Self {
        x
    }
}

/// `T_{w,h} λ`: the diagram drawn with boxes of width `w` and height `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnisotropicDiagram<T> {
    pub base: Partition,
    pub w: T,
    pub h: T,
}

impl<T: Coord> AnisotropicDiagram<T> {
    pub fn new(base: Partition, w: T, h: T) -> Result<Self> {
        if !(w > T::zero() && h > T::zero()) {
            return Err(Error::InvalidArgument("box sides must be positive".into()));
        }
        Ok(AnisotropicDiagram { base, w, h })
    }

    pub fn unit(base: Partition) -> Self {
        AnisotropicDiagram {
            base,
            w: T::one(),
            h: T::one(),
        }
    }

    /// The aspect ratio `w/h`, i.e. the α in force.
    pub fn alpha(&self) -> T {
        self.w.clone() / self.h.clone()
    }

    pub fn area(&self) -> T {
        T::from_int(self.base.size() as i64) * self.w.clone() * self.h.clone()
    }

    pub fn profile(&self) -> Profile<T> {
        let corners = staircase(&self.base)
            .into_iter()
            .map(|(x, y)| {
                let x = T::from_int(x as i64) * self.w.clone();
                let y = T::from_int(y as i64) * self.h.clone();
                (x.clone() - y.clone(), x + y)
            })
            .collect();
        Profile { corners }
    }

    /// The profile of a unit-area diagram, for use as a density.
    pub fn density(&self) -> Result<Profile<T>> {
        if !self.area().is_unit() {
            return Err(Error::InvalidArgument(format!(
                "density needs unit area, got {:?}",
                self.area()
            )));
        }
        Ok(self.profile())
    }
}

impl AnisotropicDiagram<f64> {
    /// `Λ = T_{√(α/n), 1/√(αn)} λ` with `n = |λ|`; unit area.
    pub fn jack_scaled(base: Partition, alpha: f64) -> Self {
        let n = base.size().max(1) as f64;
        AnisotropicDiagram {
            base,
            w: (alpha / n).sqrt(),
            h: 1.0 / (alpha * n).sqrt(),
        }
    }
}

/// Corners of the boundary in box units, from the top of the first column
/// to the end of the first row, with collinear points dropped.
fn staircase(l: &Partition) -> Vec<(u32, u32)> {
    let rows = l.len() as u32;
    let mut pts = vec![(0u32, rows)];
    let mut x = 0;
    for i in (1..=rows).rev() {
        let li = l.part(i as usize - 1);
        if li > x {
            pts.push((li, i));
            x = li;
        }
        pts.push((x, i - 1));
    }
    let mut out: Vec<(u32, u32)> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last() == Some(&p) {
            continue;
        }
        if out.len() >= 2 {
            let a = out[out.len() - 2];
            let b = out[out.len() - 1];
            if (a.0 == b.0 && b.0 == p.0) || (a.1 == b.1 && b.1 == p.1) {
                out.pop();
            }
        }
        out.push(p);
    }
    out
}

/// Piecewise-linear profile ω given by its corners `(u, v)` in increasing
/// `u`. Outside the corner range ω(u) = |u|.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile<T> {
    corners: Vec<(T, T)>,
}

impl<T: Coord> Profile<T> {
    pub fn from_corners(corners: Vec<(T, T)>) -> Result<Self> {
        if corners.is_empty() {
            return Err(Error::InvalidArgument("profile needs at least one corner".into()));
        }
        if corners.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument("corner u-coordinates must increase".into()));
        }
        Ok(Profile { corners })
    }

    pub fn corners(&self) -> &[(T, T)] {
        &self.corners
    }

    pub fn support(&self) -> (T, T) {
        (
            self.corners[0].0.clone(),
            self.corners[self.corners.len() - 1].0.clone(),
        )
    }

    /// ω(u).
    pub fn eval(&self, u: &T) -> T {
        let c = &self.corners;
        if *u <= c[0].0 || *u >= c[c.len() - 1].0 {
            return u.abs();
        }
        let k = c.partition_point(|(x, _)| x <= u);
        let (u0, v0) = &c[k - 1];
        let (u1, v1) = &c[k];
        let t = (u.clone() - u0.clone()) / (u1.clone() - u0.clone());
        v0.clone() + t * (v1.clone() - v0.clone())
    }

    /// Density `f(u) = (ω(u) − |u|)/2`.
    pub fn density_at(&self, u: &T) -> T {
        (self.eval(u) - u.abs()) / T::from_int(2)
    }

    /// Consecutive corner pairs (the bounded segments of the profile).
    pub fn segments(&self) -> impl Iterator<Item = (&(T, T), &(T, T))> {
        self.corners.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Recovers the partition given the box sides used to draw it.
    pub fn to_partition(&self, w: &T, h: &T) -> Partition {
        let two = T::from_int(2);
        let cells: Vec<(i64, i64)> = self
            .corners
            .iter()
            .map(|(u, v)| {
                let x = (u.clone() + v.clone()) / two.clone() / w.clone();
                let y = (v.clone() - u.clone()) / two.clone() / h.clone();
                (x.as_f64().round() as i64, y.as_f64().round() as i64)
            })
            .collect();
        let rows = cells.first().map_or(0, |c| c.1.max(0)) as usize;
        let parts = (1..=rows as i64)
            .map(|i| {
                cells
                    .iter()
                    .filter(|c| c.1 >= i)
                    .map(|c| c.0)
                    .max()
                    .unwrap_or(0) as u32
            })
            .collect();
        Partition::from_unsorted(parts)
    }
}

impl Profile<f64> {
    /// CSV rows `u,v`: a sentinel one unit out on the left ray v = −u, the
    /// corners, and a sentinel one unit out on the right ray v = u.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let (a, b) = self.support();
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["u", "v"])?;
        let rows = std::iter::once((a - 1.0, 1.0 - a))
            .chain(self.corners.iter().copied())
            .chain(std::iter::once((b + 1.0, b + 1.0)));
        for (u, v) in rows {
            w.serialize((u, v))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Inverse of [`Profile::write_csv`]; the sentinels must lie on the rays.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rows = Vec::new();
        for r in csv::Reader::from_reader(input).deserialize() {
            let (u, v): (f64, f64) = r?;
            rows.push((u, v));
        }
        if rows.len() < 3 {
            return Err(Error::Parse("profile CSV needs two sentinels and a corner".into()));
        }
        let (l, r) = (rows[0], rows[rows.len() - 1]);
        if l.0 >= 0.0 || (l.1 + l.0).abs() > 1e-12 || r.0 <= 0.0 || (r.1 - r.0).abs() > 1e-12 {
            return Err(Error::Parse("profile CSV sentinels must lie on v = |u|".into()));
        }
        rows.pop();
        rows.remove(0);
        Profile::from_corners(rows)
    }

    /// ∫ (ω(u) − |u|)/2 du, exact for the piecewise-linear profile.
    pub fn excess_area(&self) -> f64 {
        let mut pts: Vec<(f64, f64)> = self.corners.clone();
        let (a, b) = self.support();
        if a < 0.0 && b > 0.0 {
            let k = pts.partition_point(|p| p.0 < 0.0);
            if pts[k].0 != 0.0 {
                pts.insert(k, (0.0, self.eval(&0.0)));
            }
        }
        pts.windows(2)
            .map(|w| {
                let (u0, v0) = w[0];
                let (u1, v1) = w[1];
                let f0 = (v0 - u0.abs()) / 2.0;
                let f1 = (v1 - u1.abs()) / 2.0;
                (u1 - u0) * (f0 + f1) / 2.0
            })
            .sum()
    }

    pub fn to_f64(&self) -> Profile<f64> {
        self.clone()
    }
}

impl Profile<Rational> {
    pub fn to_f64(&self) -> Profile<f64> {
        Profile {
            corners: self
                .corners
                .iter()
                .map(|(u, v)| (u.as_f64(), v.as_f64()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn empty_and_single_box() {
        let e = AnisotropicDiagram::<Rational>::unit(Partition::empty()).profile();
        assert_eq!(e.eval(&rat(-3, 2)), rat(3, 2));
        assert_eq!(e.eval(&int(0)), int(0));
        let one = AnisotropicDiagram::<Rational>::unit(p(&[1])).profile();
        assert_eq!(one.corners(), &[(int(-1), int(1)), (int(0), int(2)), (int(1), int(1))]);
        assert_eq!(one.eval(&int(0)), int(2));
        let dens = AnisotropicDiagram::<Rational>::unit(p(&[1])).density().unwrap();
        assert_eq!(dens.density_at(&int(0)), int(1));
        assert_eq!(dens.density_at(&rat(1, 2)), rat(1, 2));
    }

    #[test]
    fn fig_two_geometry() {
        // (4,3,1) with w = 1/2, h = 3/2
        let d = AnisotropicDiagram::new(p(&[4, 3, 1]), rat(1, 2), rat(3, 2)).unwrap();
        let us: Vec<Rational> = d.profile().corners().iter().map(|c| c.0.clone()).collect();
        // corners (0,3h) (w,3h) (w,2h) (3w,2h) (3w,h) (4w,h) (4w,0) in (x,y)
        let expect = [(0, 9), (1, 9), (1, 6), (3, 6), (3, 3), (4, 3), (4, 0)]
            .map(|(x, y)| rat(x, 2) - rat(y, 2));
        assert_eq!(us, expect.to_vec());
    }

    #[test]
    fn round_trip() {
        for l in crate::partitions::enumerate_partitions(7) {
            let d = AnisotropicDiagram::new(l.clone(), rat(2, 3), rat(5, 4)).unwrap();
            assert_eq!(d.profile().to_partition(&d.w, &d.h), l);
        }
    }

    #[test]
    fn unit_area_excess() {
        let d = AnisotropicDiagram::jack_scaled(p(&[5, 2, 2, 1]), 2.5);
        let prof = d.density().unwrap();
        assert!((prof.excess_area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unit_area() {
        let d = AnisotropicDiagram::<Rational>::unit(p(&[2]));
        assert!(d.density().is_err());
    }
}
