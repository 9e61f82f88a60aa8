//! Seeded Monte Carlo over the flat probability simplex.
//!
//! Draws are produced in blocks of [`BLOCK`] states. Block `b` uses
//! `ChaCha8Rng::seed_from_u64(seed)` switched to stream `b`, so the output
//! depends only on `(n, seed)` and not on the number of worker threads.

use std::fmt;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::{classify_with_tol, VerdictKind};
use crate::error::{Error, Result};
use crate::pauli_core::ProbVector;
use crate::witness::NonlinearFamilyId;

use super::report::{csv_err, sci};

pub const BLOCK: usize = 4096;

pub fn block_rng(seed: u64, block: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block as u64);
    rng
}

fn blocks(n: usize) -> impl IndexedParallelIterator<Item = (usize, usize)> {
    (0..n.div_ceil(BLOCK))
        .into_par_iter()
        .map(move |b| (b, BLOCK.min(n - b * BLOCK)))
}

/// `n` flat-Dirichlet draws, in block order.
pub fn sample_points(n: usize, seed: u64) -> Vec<ProbVector> {
    blocks(n)
        .flat_map_iter(|(b, len)| {
            let mut rng = block_rng(seed, b);
            (0..len)
                .map(|_| ProbVector::random(&mut rng))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// One classified draw.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub p: ProbVector,
    pub kind: VerdictKind,
    pub witness: Option<(NonlinearFamilyId, f64)>,
}

impl SampleRow {
    pub const HEADER: [&'static str; 11] = [
        "p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "verdict", "witness", "value",
    ];

    pub fn record(&self) -> Vec<String> {
        let mut row: Vec<String> = self.p.as_array().iter().map(|x| sci(*x)).collect();
        row.push(self.kind.to_string());
        match self.witness {
            Some((id, v)) => {
                row.push(id.to_string());
                row.push(sci(v));
            }
            None => {
                row.push(String::new());
                row.push(String::new());
            }
        }
        row
    }

    pub fn from_record(rec: &csv::StringRecord) -> Result<Self> {
        if rec.len() != Self::HEADER.len() {
            return Err(Error::WrongLength {
                expected: Self::HEADER.len(),
                got: rec.len(),
            });
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
        };
        let p: Vec<f64> = (0..8).map(|k| num(&rec[k])).collect::<Result<_>>()?;
        let kind = rec[8].parse()?;
        let witness = if rec[9].is_empty() {
            None
        } else {
            Some((rec[9].parse()?, num(&rec[10])?))
        };
        Ok(SampleRow {
            p: ProbVector::from_slice(&p)?,
            kind,
            witness,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub seed: u64,
    pub n_total: u64,
    pub n_npt: u64,
    pub n_ppt: u64,
    pub n_detected: u64,
    pub n_certified_separable: u64,
    pub n_undecided: u64,
    pub fraction_detected_of_ppt: f64,
    /// Detections credited to each id (the most negative one per state).
    pub per_witness: Vec<(NonlinearFamilyId, u64)>,
}

impl SampleReport {
    pub fn from_rows(seed: u64, rows: &[SampleRow]) -> Self {
        let ids = NonlinearFamilyId::all();
        let mut tallies = vec![0u64; ids.len()];
        let count = |k: VerdictKind| rows.iter().filter(|r| r.kind == k).count() as u64;
        for row in rows {
            if let (VerdictKind::BoundDetected, Some((id, _))) = (row.kind, row.witness) {
                let pos = ids.iter().position(|x| *x == id).expect("family id");
                tallies[pos] += 1;
            }
        }
        let n_npt = count(VerdictKind::Npt);
        let n_detected = count(VerdictKind::BoundDetected);
        let n_ppt = rows.len() as u64 - n_npt;
        SampleReport {
            seed,
            n_total: rows.len() as u64,
            n_npt,
            n_ppt,
            n_detected,
            n_certified_separable: count(VerdictKind::SeparableCertified),
            n_undecided: count(VerdictKind::PptUndecided),
            fraction_detected_of_ppt: if n_ppt == 0 {
                0.0
            } else {
                n_detected as f64 / n_ppt as f64
            },
            per_witness: ids.into_iter().zip(tallies).collect(),
        }
    }
}

impl fmt::Display for SampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "n_total: {}", self.n_total)?;
        writeln!(f, "n_npt: {}", self.n_npt)?;
        writeln!(f, "n_ppt: {}", self.n_ppt)?;
        writeln!(f, "n_detected: {}", self.n_detected)?;
        writeln!(f, "n_certified_separable: {}", self.n_certified_separable)?;
        writeln!(f, "n_undecided: {}", self.n_undecided)?;
        writeln!(
            f,
            "fraction_detected_of_ppt: {:.6}",
            self.fraction_detected_of_ppt
        )?;
        writeln!(f, "per-witness detections:")?;
        for (id, n) in self.per_witness.iter().filter(|(_, n)| *n > 0) {
            writeln!(f, "  {id}: {n}")?;
        }
        Ok(())
    }
}

/// Classifies `n` seeded draws.
pub fn cmd_sample(n: usize, seed: u64, tol: f64) -> Result<(SampleReport, Vec<SampleRow>)> {
    if n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    let rows: Vec<SampleRow> = blocks(n)
        .map(|(b, len)| {
            let mut rng = block_rng(seed, b);
            (0..len)
                .map(|_| {
                    let p = ProbVector::random(&mut rng);
                    let v = classify_with_tol(&p, tol)?;
                    Ok(SampleRow {
                        p,
                        kind: v.kind,
                        witness: v.witness,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok((SampleReport::from_rows(seed, &rows), rows))
}

pub fn write_rows<W: Write>(rows: &[SampleRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(SampleRow::HEADER).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.record()).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_rows<R: std::io::Read>(input: R) -> Result<Vec<SampleRow>> {
    let mut r = csv::Reader::from_reader(input);
    r.records()
        .map(|rec| SampleRow::from_record(&rec.map_err(csv_err)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_draw_report_is_consistent() {
        let (rep, rows) = cmd_sample(1, 0, 1e-9).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rep.n_total, 1);
        assert_eq!(rep.n_npt + rep.n_ppt, 1);
        assert_eq!(
            rep.n_ppt,
            rep.n_detected + rep.n_certified_separable + rep.n_undecided
        );
        assert!(cmd_sample(0, 0, 1e-9).is_err());
    }

    #[test]
    fn points_do_not_depend_on_pool_size() {
        let a = sample_points(BLOCK + 17, 9);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| sample_points(BLOCK + 17, 9));
        assert_eq!(a, b);
        assert_ne!(a[0], a[BLOCK], "blocks use distinct streams");
    }

    #[test]
    fn rows_round_trip() {
        let (_, rows) = cmd_sample(300, 3, 1e-9).unwrap();
        let mut buf = Vec::new();
        write_rows(&rows, &mut buf).unwrap();
        assert_eq!(read_rows(buf.as_slice()).unwrap(), rows);
    }
}
