//! Measure-time clocks: a nondecreasing, right-continuous reparametrization of
//! time whose measure carries a piecewise-constant absolutely continuous
//! density, finitely many atoms, and flats (intervals of zero mass).
//!
//! The cadlag convention is used throughout: `sigma_of(t)` includes an atom
//! located exactly at `t`; the left limit is exposed separately.

use crate::error::{Error, Result};

/// One absolutely continuous piece: density `w >= 0` on `[t_start, t_end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub t_start: f64,
    pub t_end: f64,
    pub w: f64,
}

/// An instantaneous dose of clock mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub t: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaClock {
    horizon: f64,
    segments: Vec<Segment>,
    atoms: Vec<Atom>,
}

/// Exact split of the clock mass on `[0, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClockDecomposition {
    pub ac_mass: f64,
    pub atomic_mass: f64,
    /// Maximal intervals on which `sigma_of` is constant, i.e. `w == 0`
    /// stretches split at interior atoms. Stored as `(start, end)` with the
    /// cadlag reading "sigma(t) == sigma(start) for t in [start, end)".
    pub flats: Vec<(f64, f64)>,
}

impl SigmaClock {
    /// Builds a clock from raw segment and atom lists, validating that the
    /// segments partition `[0, horizon]` exactly and the atoms are strictly
    /// increasing inside `(0, horizon]`.
    pub fn new(horizon: f64, segments: Vec<Segment>, atoms: Vec<Atom>) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::domain(format!("horizon must be positive, got {horizon}")));
        }
        if segments.is_empty() {
            return Err(Error::domain("clock needs at least one segment"));
        }
        if segments[0].t_start != 0.0 {
            return Err(Error::domain("segments must start at t = 0"));
        }
        for pair in segments.windows(2) {
            if pair[0].t_end != pair[1].t_start {
                return Err(Error::domain(format!(
                    "segments must abut exactly: {} != {}",
                    pair[0].t_end, pair[1].t_start
                )));
            }
        }
        for seg in &segments {
            if !(seg.t_end > seg.t_start) {
                return Err(Error::domain("segment must have positive length"));
            }
            if !(seg.w.is_finite() && seg.w >= 0.0) {
                return Err(Error::domain(format!("density must be finite and >= 0, got {}", seg.w)));
            }
        }
        if segments.last().unwrap().t_end != horizon {
            return Err(Error::domain("segments must end exactly at the horizon"));
        }
        let mut prev = 0.0;
        for atom in &atoms {
            if !(atom.t > prev) {
                return Err(Error::domain("atoms must be strictly increasing and > 0"));
            }
            if atom.t > horizon {
                return Err(Error::domain("atom beyond the horizon"));
            }
            if !(atom.alpha.is_finite() && atom.alpha > 0.0) {
                return Err(Error::domain("atom mass must be positive"));
            }
            prev = atom.t;
        }
        Ok(SigmaClock { horizon, segments, atoms })
    }

    /// The identity clock `sigma(t) = t` (wall time).
    pub fn identity(horizon: f64) -> Self {
        SigmaClock::new(horizon, vec![Segment { t_start: 0.0, t_end: horizon, w: 1.0 }], vec![])
            .expect("identity clock is valid")
    }

    /// Constant density `w` on `[0, horizon]` with the given atoms.
    pub fn with_density(horizon: f64, w: f64, atoms: &[(f64, f64)]) -> Result<Self> {
        SigmaClock::new(
            horizon,
            vec![Segment { t_start: 0.0, t_end: horizon, w }],
            atoms.iter().map(|&(t, alpha)| Atom { t, alpha }).collect(),
        )
    }

    pub fn from_lists(horizon: f64, segments: &[(f64, f64, f64)], atoms: &[(f64, f64)]) -> Result<Self> {
        SigmaClock::new(
            horizon,
            segments.iter().map(|&(a, b, w)| Segment { t_start: a, t_end: b, w }).collect(),
            atoms.iter().map(|&(t, alpha)| Atom { t, alpha }).collect(),
        )
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !(t >= 0.0 && t <= self.horizon) {
            return Err(Error::domain(format!(
                "t = {t} outside [0, {}]",
                self.horizon
            )));
        }
        Ok(())
    }

    /// `sigma(t)`: integrated density plus every atom with `t_k <= t`.
    pub fn sigma_of(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        let mut s = self.ac_mass_to(t);
        for atom in &self.atoms {
            if atom.t <= t {
                s += atom.alpha;
            } else {
                break;
            }
        }
        Ok(s)
    }

    /// Left limit `sigma(t-)`: excludes an atom located exactly at `t`.
    pub fn sigma_left(&self, t: f64) -> Result<f64> {
        let s = self.sigma_of(t)?;
        Ok(s - self.atom_mass_at(t))
    }

    fn atom_mass_at(&self, t: f64) -> f64 {
        self.atoms.iter().find(|a| a.t == t).map_or(0.0, |a| a.alpha)
    }

    /// Integrated density on `[0, t]`, exact for piecewise-constant `w`.
    fn ac_mass_to(&self, t: f64) -> f64 {
        let mut s = 0.0;
        for seg in &self.segments {
            if t <= seg.t_start {
                break;
            }
            let upper = t.min(seg.t_end);
            s += seg.w * (upper - seg.t_start);
        }
        s
    }

    /// Mass of the half-open interval `(s, t]`: atoms at `s` excluded, at `t`
    /// included.
    pub fn sigma_mass(&self, s: f64, t: f64) -> Result<f64> {
        if s > t {
            return Err(Error::domain(format!("empty interval requested backwards: {s} > {t}")));
        }
        Ok(self.sigma_of(t)? - self.sigma_of(s)?)
    }

    /// Absolutely continuous mass of `(s, t]` (no atom contribution).
    pub fn ac_mass(&self, s: f64, t: f64) -> Result<f64> {
        if s > t {
            return Err(Error::domain(format!("empty interval requested backwards: {s} > {t}")));
        }
        self.check_time(s)?;
        self.check_time(t)?;
        Ok(self.ac_mass_to(t) - self.ac_mass_to(s))
    }

    /// Density at time `t` (value of the segment containing `t`; the last
    /// segment also covers `t == horizon`).
    pub fn density_at(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        for seg in &self.segments {
            if t < seg.t_end || (t == self.horizon && seg.t_end == self.horizon) {
                return Ok(seg.w);
            }
        }
        Ok(self.segments.last().unwrap().w)
    }

    /// Exact Lebesgue split plus the flat set. Flats are maximal intervals of
    /// sigma-constancy: `w == 0` stretches, split at interior atoms.
    pub fn decompose(&self) -> ClockDecomposition {
        let ac_mass = self.ac_mass_to(self.horizon);
        let atomic_mass: f64 = self.atoms.iter().map(|a| a.alpha).sum();

        // Merge consecutive zero-density segments, then split at atoms.
        let mut zero_runs: Vec<(f64, f64)> = Vec::new();
        for seg in &self.segments {
            if seg.w == 0.0 {
                match zero_runs.last_mut() {
                    Some(run) if run.1 == seg.t_start => run.1 = seg.t_end,
                    _ => zero_runs.push((seg.t_start, seg.t_end)),
                }
            }
        }
        let mut flats = Vec::new();
        for (a, b) in zero_runs {
            let mut lo = a;
            for atom in &self.atoms {
                if atom.t > lo && atom.t < b {
                    flats.push((lo, atom.t));
                    lo = atom.t;
                }
            }
            flats.push((lo, b));
        }
        ClockDecomposition { ac_mass, atomic_mass, flats }
    }

    /// Sorted breakpoints: segment boundaries and atom times.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut bps: Vec<f64> = Vec::with_capacity(self.segments.len() + self.atoms.len() + 1);
        bps.push(0.0);
        for seg in &self.segments {
            bps.push(seg.t_end);
        }
        for atom in &self.atoms {
            bps.push(atom.t);
        }
        bps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        bps.dedup();
        bps
    }

    /// True iff `sigma_self(t) <= sigma_other(t)` for every `t`. Exact for
    /// piecewise-constant densities: both clocks are piecewise linear between
    /// merged breakpoints, so checking values and left limits there suffices.
    pub fn dominates(&self, other: &SigmaClock) -> Result<bool> {
        if self.horizon != other.horizon {
            return Err(Error::domain(format!(
                "horizon mismatch: {} vs {}",
                self.horizon, other.horizon
            )));
        }
        let mut bps = self.breakpoints();
        bps.extend(other.breakpoints());
        bps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        bps.dedup();
        for &t in &bps {
            if self.sigma_of(t)? > other.sigma_of(t)? + 1e-14 {
                return Ok(false);
            }
            if self.sigma_left(t)? > other.sigma_left(t)? + 1e-14 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Total variation of sampled values over sigma-adapted partitions
    /// restricted to the sample grid. For scalar samples the supremum is the
    /// consecutive-difference sum (refinement never decreases it).
    pub fn var_sigma(&self, samples: &[(f64, f64)]) -> Result<f64> {
        for pair in samples.windows(2) {
            if pair[0].0 > pair[1].0 {
                return Err(Error::domain("samples must be time-sorted"));
            }
        }
        for &(t, _) in samples {
            self.check_time(t)?;
        }
        Ok(samples.windows(2).map(|p| (p[1].1 - p[0].1).abs()).sum())
    }
}
