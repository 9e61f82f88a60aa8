//! Grid scans of two-coordinate projections of the PPT polytope and of the
//! category-1 triangle family.

use std::io::Write;

use rayon::prelude::*;

use crate::classify::{cat1_special, classify_with_tol, VerdictKind};
use crate::error::{Error, Result};
use crate::ppt::region::{convex_hull, project_region};

use super::report::{csv_err, sci};
use super::sample::sample_points;

pub const PLANES: [&str; 7] = ["p1p2", "p1p3", "p3p4", "p2p4", "p5p6", "p7p8", "cat1-triangle"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    /// Projection onto `(p_a, p_b)`, 1-based.
    Coords(usize, usize),
    /// `(p₁, p₂, q, 0, q, 0, q, 0)` over `(p₁, p₂)`.
    Cat1Triangle,
}

impl std::str::FromStr for Plane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cat1-triangle" => Ok(Plane::Cat1Triangle),
            _ if PLANES.contains(&s) => {
                let b = s.as_bytes();
                Ok(Plane::Coords(
                    usize::from(b[1] - b'0'),
                    usize::from(b[3] - b'0'),
                ))
            }
            _ => Err(Error::Parse(format!(
                "unknown plane {s:?}; expected one of {}",
                PLANES.join(", ")
            ))),
        }
    }
}

impl std::fmt::Display for Plane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Plane::Coords(a, b) => write!(f, "p{a}p{b}"),
            Plane::Cat1Triangle => f.write_str("cat1-triangle"),
        }
    }
}

/// Verdict counts in [`VerdictKind::ALL`] order.
pub type Tally = [u64; 4];

#[derive(Debug, Clone, PartialEq)]
pub struct RegionCell {
    pub i: usize,
    pub j: usize,
    pub x: f64,
    pub y: f64,
    pub feasible: bool,
    /// Classification of the cell's own state (triangle plane only).
    pub verdict: Option<VerdictKind>,
    /// Classifications of sampled states falling in the cell.
    pub tally: Tally,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionScan {
    pub plane: Plane,
    pub grid: usize,
    pub cells: Vec<RegionCell>,
}

impl RegionScan {
    pub fn feasible_points(&self) -> Vec<(f64, f64)> {
        self.cells
            .iter()
            .filter(|c| c.feasible)
            .map(|c| (c.x, c.y))
            .collect()
    }

    pub fn hull(&self) -> Vec<(f64, f64)> {
        convex_hull(&self.feasible_points())
    }

    pub fn cell(&self, i: usize, j: usize) -> &RegionCell {
        &self.cells[i * self.grid + j]
    }
}

/// Scans `plane` on a `grid × grid` lattice of cell corners `(i/grid,
/// j/grid)`. For coordinate planes, `samples` seeded simplex draws are
/// classified and tallied into the cell containing their projection.
pub fn cmd_region(plane: Plane, grid: usize, samples: usize, seed: u64, tol: f64) -> Result<RegionScan> {
    if grid < 2 {
        return Err(Error::Parse("grid must be at least 2".into()));
    }
    let g = grid as f64;
    let cells = match plane {
        Plane::Coords(a, b) => {
            let region = project_region((a, b), grid);
            let mut tallies = vec![[0u64; 4]; grid * grid];
            if samples > 0 {
                let verdicts: Vec<(usize, usize)> = sample_points(samples, seed)
                    .par_iter()
                    .map(|p| {
                        let kind = classify_with_tol(p, tol)?.kind;
                        let bin = |v: f64| ((v * g) as usize).min(grid - 1);
                        let cell = bin(p.get(a)) * grid + bin(p.get(b));
                        let k = VerdictKind::ALL.iter().position(|x| *x == kind).unwrap();
                        Ok((cell, k))
                    })
                    .collect::<Result<_>>()?;
                for (cell, k) in verdicts {
                    tallies[cell][k] += 1;
                }
            }
            (0..grid * grid)
                .map(|n| {
                    let (i, j) = (n / grid, n % grid);
                    let (x, y) = region.corner(i, j);
                    RegionCell {
                        i,
                        j,
                        x,
                        y,
                        feasible: region.is_feasible(i, j),
                        verdict: None,
                        tally: tallies[n],
                    }
                })
                .collect()
        }
        Plane::Cat1Triangle => (0..grid * grid)
            .into_par_iter()
            .map(|n| {
                let (i, j) = (n / grid, n % grid);
                let (x, y) = (i as f64 / g, j as f64 / g);
                let verdict = if i + j <= grid {
                    Some(classify_with_tol(&cat1_special(x, y)?, tol)?.kind)
                } else {
                    None
                };
                Ok(RegionCell {
                    i,
                    j,
                    x,
                    y,
                    feasible: verdict.is_some_and(|k| k != VerdictKind::Npt),
                    verdict,
                    tally: [0; 4],
                })
            })
            .collect::<Result<_>>()?,
    };
    Ok(RegionScan { plane, grid, cells })
}

pub const CSV_HEADER: [&str; 12] = [
    "plane",
    "i",
    "j",
    "x",
    "y",
    "feasible",
    "verdict",
    "n_sampled",
    "n_npt",
    "n_detected",
    "n_separable",
    "n_undecided",
];

pub fn write_csv<W: Write>(scan: &RegionScan, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    let plane = scan.plane.to_string();
    for c in &scan.cells {
        let mut row = vec![
            plane.clone(),
            c.i.to_string(),
            c.j.to_string(),
            sci(c.x),
            sci(c.y),
            u8::from(c.feasible).to_string(),
            c.verdict.map(|k| k.to_string()).unwrap_or_default(),
            c.tally.iter().sum::<u64>().to_string(),
        ];
        row.extend(c.tally.iter().map(u64::to_string));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

fn colour(c: &RegionCell) -> Option<&'static str> {
    match c.verdict {
        Some(VerdictKind::BoundDetected) => Some("#c0392b"),
        Some(VerdictKind::SeparableCertified) => Some("#1f4e99"),
        Some(VerdictKind::PptUndecided) => Some("#e0a030"),
        Some(VerdictKind::Npt) => None,
        None if c.feasible => Some("#8a8a8a"),
        None => None,
    }
}

/// Scatter of the non-NPT cells as an SVG document.
pub fn write_svg<W: Write>(scan: &RegionScan, mut out: W) -> Result<()> {
    const SIZE: f64 = 500.0;
    const MARGIN: f64 = 40.0;
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    let cell = SIZE / scan.grid as f64;
    let (xl, yl) = match scan.plane {
        Plane::Coords(a, b) => (format!("p{a}"), format!("p{b}")),
        Plane::Cat1Triangle => ("p1".to_string(), "p2".to_string()),
    };
    let total = SIZE + 2.0 * MARGIN;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    )
    .map_err(io)?;
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).map_err(io)?;
    for c in &scan.cells {
        if let Some(fill) = colour(c) {
            let px = MARGIN + c.x * SIZE;
            let py = MARGIN + SIZE - c.y * SIZE - cell;
            writeln!(
                out,
                r#"<rect x="{px:.3}" y="{py:.3}" width="{cell:.3}" height="{cell:.3}" fill="{fill}"/>"#
            )
            .map_err(io)?;
        }
    }
    writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black"/>"#
    )
    .map_err(io)?;
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">{xl}</text>"#,
        MARGIN + SIZE / 2.0,
        total - 10.0
    )
    .map_err(io)?;
    writeln!(
        out,
        r#"<text x="14" y="{}" font-size="14" text-anchor="middle">{yl}</text>"#,
        MARGIN + SIZE / 2.0
    )
    .map_err(io)?;
    writeln!(out, "</svg>").map_err(io)?;
    Ok(())
}
