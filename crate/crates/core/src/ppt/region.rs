//! Projections of the PPT polytope onto coordinate planes.

use num_rational::Rational64;
use rayon::prelude::*;

use super::lp::{lp_feasible, AffineConstraint, LinearSystem, Relation};
use super::inequality_rows;

/// Feasibility of every grid cell of a coordinate plane. Cell `(i, j)` is
/// represented by its lower-left corner `(i/grid, j/grid)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    /// 1-based probability indices spanning the plane.
    pub plane: (usize, usize),
    pub grid: usize,
    /// Row-major by `i` (first coordinate), length `grid²`.
    pub feasible: Vec<bool>,
}

impl Region {
    pub fn is_feasible(&self, i: usize, j: usize) -> bool {
        self.feasible[i * self.grid + j]
    }

    pub fn corner(&self, i: usize, j: usize) -> (f64, f64) {
        let g = self.grid as f64;
        (i as f64 / g, j as f64 / g)
    }

    /// Corner points of feasible cells.
    pub fn feasible_points(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for i in 0..self.grid {
            for j in 0..self.grid {
                if self.is_feasible(i, j) {
                    out.push(self.corner(i, j));
                }
            }
        }
        out
    }

    pub fn count(&self) -> usize {
        self.feasible.iter().filter(|&&f| f).count()
    }
}

/// Exact feasibility of the PPT polytope with `p_a = x`, `p_b = y` pinned.
pub fn pinned_feasible(plane: (usize, usize), x: Rational64, y: Rational64) -> bool {
    let (a, b) = (plane.0 - 1, plane.1 - 1);
    let rest: Vec<usize> = (0..8).filter(|&k| k != a && k != b).collect();
    let mut sys = LinearSystem::nonnegative(rest.len());
    let one = Rational64::from_integer(1);
    sys.push(AffineConstraint::int(&vec![1; rest.len()], Relation::Eq, one - x - y));
    for row in inequality_rows() {
        let coeffs: Vec<i64> = rest.iter().map(|&k| i64::from(row[k])).collect();
        let fixed = Rational64::from_integer(row[a].into()) * x
            + Rational64::from_integer(row[b].into()) * y;
        sys.push(AffineConstraint::int(&coeffs, Relation::Ge, -fixed));
    }
    lp_feasible(&sys)
}

/// Scans the `grid × grid` lattice of the plane spanned by `p_a`, `p_b`
/// (1-based, distinct). Each point is decided by an exact LP over the
/// remaining six probabilities.
pub fn project_region(plane: (usize, usize), grid: usize) -> Region {
    assert!(grid >= 2, "grid must be at least 2");
    assert!(
        plane.0 != plane.1 && (1..=8).contains(&plane.0) && (1..=8).contains(&plane.1),
        "invalid plane {plane:?}"
    );
    let g = i64::try_from(grid).expect("grid too large");
    let feasible: Vec<bool> = (0..grid * grid)
        .into_par_iter()
        .map(|cell| {
            let (i, j) = ((cell / grid) as i64, (cell % grid) as i64);
            if i + j > g {
                return false;
            }
            pinned_feasible(plane, Rational64::new(i, g), Rational64::new(j, g))
        })
        .collect();
    Region {
        plane,
        grid,
        feasible,
    }
}

/// Convex hull (counter-clockwise, no collinear points) by monotone chain.
pub fn convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn point_examples() {
        assert!(pinned_feasible((1, 2), r(1, 2), r(1, 2)));
        assert!(!pinned_feasible((1, 2), r(3, 10), r(0, 1)));
        assert!(!pinned_feasible((1, 3), r(3, 10), r(3, 10)));
        assert!(pinned_feasible((1, 3), r(1, 4), r(1, 4)));
    }

    #[test]
    fn p1p2_cells_satisfy_closed_form() {
        let reg = project_region((1, 2), 40);
        for i in 0..40 {
            for j in 0..40 {
                let (x, y) = (r(i as i64, 40), r(j as i64, 40));
                let inside = r(4, 1) * x - r(2, 1) * y <= r(1, 1)
                    && r(4, 1) * y - r(2, 1) * x <= r(1, 1);
                assert_eq!(reg.is_feasible(i, j), inside, "cell ({i}, {j})");
            }
        }
    }

    #[test]
    fn p1p3_is_triangle() {
        let reg = project_region((1, 3), 40);
        for i in 0..40 {
            for j in 0..40 {
                assert_eq!(reg.is_feasible(i, j), i + j <= 20, "cell ({i}, {j})");
            }
        }
    }

    #[test]
    fn hull_of_square_with_interior() {
        let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5), (0.5, 0.0)];
        let h = convex_hull(&pts);
        assert_eq!(h, vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
    }
}
