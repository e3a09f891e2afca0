//! j grids for sweeps: linear or geometric, snapped to the half-integer
//! lattice with collision bumping so the requested point count survives.

use relspin::{Error, HalfInteger};

use crate::args::SpacingArg;

pub fn j_grid(
    min: HalfInteger,
    max: HalfInteger,
    points: usize,
    spacing: SpacingArg,
) -> Result<Vec<HalfInteger>, Error> {
    if points == 0 {
        return Err(Error::InvalidHalfInteger("sweep needs at least one j point".into()));
    }
    if min > max {
        return Err(Error::InvalidHalfInteger("--j-min above --j-max".into()));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    let (lo, hi) = (min.value(), max.value());
    let raw: Vec<f64> = (0..points)
        .map(|k| {
            let t = k as f64 / (points - 1) as f64;
            match spacing {
                SpacingArg::Linear => lo + t * (hi - lo),
                SpacingArg::Geometric => lo * (hi / lo).powf(t),
            }
        })
        .collect();

    let mut grid: Vec<HalfInteger> = Vec::with_capacity(points);
    for value in raw {
        let mut twice = (2.0 * value).round().max(1.0) as u32;
        if let Some(last) = grid.last() {
            twice = twice.max(last.twice() + 1);
        }
        grid.push(HalfInteger::from_twice(twice));
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HalfInteger {
        s.parse().unwrap()
    }

    #[test]
    fn default_grid_has_twelve_distinct_points() {
        let grid = j_grid(h("1/2"), h("25"), 12, SpacingArg::Geometric).unwrap();
        assert_eq!(grid.len(), 12);
        assert_eq!(grid.first().unwrap(), &h("1/2"));
        assert_eq!(grid.last().unwrap(), &h("25"));
        for pair in grid.windows(2) {
            assert!(pair[0] < pair[1], "{grid:?}");
        }
    }

    #[test]
    fn linear_grid() {
        let grid = j_grid(h("1"), h("3"), 5, SpacingArg::Linear).unwrap();
        assert_eq!(grid, vec![h("1"), h("3/2"), h("2"), h("5/2"), h("3")]);
    }

    #[test]
    fn degenerate_requests() {
        assert_eq!(j_grid(h("2"), h("2"), 1, SpacingArg::Geometric).unwrap(), vec![h("2")]);
        assert!(j_grid(h("3"), h("2"), 4, SpacingArg::Linear).is_err());
        assert!(j_grid(h("1"), h("2"), 0, SpacingArg::Linear).is_err());
    }
}
