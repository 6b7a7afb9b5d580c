use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::theta::planar_points;
use crate::instance::{Instance, RobotId};
use crate::math::floor;
use crate::Error;

/// One nonempty cell of the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Pixel {
    /// `(column, row)` in the grid.
    pub cell: (usize, usize),
    /// Lowest-numbered robot of the pixel.
    pub representative: RobotId,
    pub robots: Vec<RobotId>,
    pub sites: Vec<usize>,
}

/// The points rescaled into the unit square and cut into `m × m` pixels.
#[derive(Clone, Debug, PartialEq)]
pub struct PixelGrid {
    pub m: usize,
    /// Lower-left corner and side of the bounding square.
    pub origin: [f64; 2],
    pub side: f64,
    /// Nonempty pixels ordered by representative, so the source's comes first.
    pub pixels: Vec<Pixel>,
    /// Index into `pixels` for every robot.
    pub pixel_of: Vec<usize>,
}

impl PixelGrid {
    pub fn representatives(&self) -> Vec<RobotId> {
        self.pixels.iter().map(|p| p.representative).collect()
    }
}

fn cell(coord: f64, origin: f64, side: f64, m: usize) -> usize {
    if side <= 0.0 {
        return 0;
    }
    let x = (coord - origin) / side;
    (floor(x * m as f64).max(0.0) as usize).min(m - 1)
}

/// Groups the robots of a planar instance into the pixels of an `m × m` grid
/// laid over the bounding square. Coincident points all land in one pixel.
pub fn pixelize(instance: &Instance, m: usize) -> Result<PixelGrid, Error> {
    if m == 0 {
        return Err(Error::Parameter("grid resolution must be at least 1".into()));
    }
    let coords = instance
        .coordinates()
        .ok_or_else(|| Error::Precondition("instance is not a point set".into()))?;
    let pts = planar_points(coords)?;
    let occupied: Vec<usize> = instance.occupied_sites().collect();
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for &s in &occupied {
        for d in 0..2 {
            lo[d] = lo[d].min(pts[s][d]);
            hi[d] = hi[d].max(pts[s][d]);
        }
    }
    let side = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let mut cells: BTreeMap<(usize, usize), (Vec<RobotId>, Vec<usize>)> = BTreeMap::new();
    for &s in &occupied {
        let c = (cell(pts[s][0], lo[0], side, m), cell(pts[s][1], lo[1], side, m));
        let entry = cells.entry(c).or_default();
        entry.0.extend_from_slice(instance.robots_at(s));
        entry.1.push(s);
    }
    let mut pixels: Vec<Pixel> = cells
        .into_iter()
        .map(|(cell, (mut robots, sites))| {
            robots.sort();
            Pixel {
                cell,
                representative: robots[0],
                robots,
                sites,
            }
        })
        .collect();
    pixels.sort_by_key(|p| p.representative);
    let mut pixel_of = alloc::vec![0; instance.robot_count()];
    for (i, p) in pixels.iter().enumerate() {
        for r in &p.robots {
            pixel_of[r.0] = i;
        }
    }
    Ok(PixelGrid {
        m,
        origin: lo,
        side,
        pixels,
        pixel_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_corners() {
        let inst = Instance::planar(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)], 0).unwrap();
        let g = pixelize(&inst, 2).unwrap();
        assert_eq!(g.pixels.len(), 4);
        assert_eq!(g.representatives(), alloc::vec![RobotId(0), RobotId(1), RobotId(2), RobotId(3)]);
        assert_eq!(g.pixels[3].cell, (1, 1));
    }

    #[test]
    fn one_pixel() {
        let inst = Instance::planar(&[(0.0, 0.0), (0.1, 0.1), (0.2, 0.0), (2.0, 2.0)], 1).unwrap();
        let g = pixelize(&inst, 1).unwrap();
        assert_eq!(g.pixels.len(), 1);
        assert_eq!(g.pixels[0].representative, RobotId(0));
        let same = Instance::planar(&[(1.0, 1.0), (1.0, 1.0)], 0).unwrap();
        let g = pixelize(&same, 3).unwrap();
        assert_eq!(g.side, 0.0);
        assert_eq!(g.pixels.len(), 1);
    }
}
