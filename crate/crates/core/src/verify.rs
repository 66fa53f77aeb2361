//! The per-group verification suites: round trip over a ball, a relation
//! audit per generator, and the group's length bounds.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::automata::audit::Searched;
use crate::automata::{relation_audit, AuditReport, Configs, RunBounds};
use crate::bounds::BoundsReport;
use crate::groups::{bfs_ball_with_cap, format_element, parse_element, DistanceMap, GroupError, GroupSpec, WreathElement, DEFAULT_BALL_CAP};
use crate::rep_f2::{f2_bounds_check, f2_decode, f2_encode, f2_mult_pda, F2Rep};
use crate::rep_grid::{grid_bounds_check, grid_decode, grid_dir_sa, grid_encode, grid_h_fsa, grid_relation_audit, Dir, GridBoundsReport, RepGridError};
use crate::rep_z::constants::DEFAULT_G_RADIUS;
use crate::rep_z::lamplighter::ll_bounds_check;
use crate::rep_z::{gz_constants, gz_decode, gz_encode, gz_mult_fsa, ll_decode, ll_encode, ll_mult_fsa, GPresentation, GzConstants, GzRep, LlRep};

/// A registered representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Ll,
    GzZ2,
    GzZ,
    F2,
    Grid,
}

impl Group {
    pub const ALL: [Group; 5] = [Group::Ll, Group::GzZ2, Group::GzZ, Group::F2, Group::Grid];

    pub fn name(self) -> &'static str {
        match self {
            Group::Ll => "ll",
            Group::GzZ2 => "gz:z2",
            Group::GzZ => "gz:z",
            Group::F2 => "f2",
            Group::Grid => "grid",
        }
    }

    pub fn spec(self) -> GroupSpec {
        match self {
            Group::Ll | Group::GzZ2 => GroupSpec::lamplighter(),
            Group::GzZ => GroupSpec::z_wr_z(),
            Group::F2 => GroupSpec::z2_wr_f2(),
            Group::Grid => GroupSpec::z2_wr_grid(),
        }
    }

    pub fn parse_element(self, s: &str) -> Result<WreathElement, GroupError> {
        let spec = self.spec();
        parse_element(spec.base, spec.lamp, s)
    }

    pub fn encode(self, g: &WreathElement) -> Result<Vec<u8>, String> {
        match self {
            Group::Ll => ll_encode(g).map_err(|e| e.to_string()),
            Group::GzZ2 => gz_encode(GPresentation::Z2, g).map_err(|e| e.to_string()),
            Group::GzZ => gz_encode(GPresentation::ZBinary, g).map_err(|e| e.to_string()),
            Group::F2 => f2_encode(g).map_err(|e| e.to_string()),
            Group::Grid => grid_encode(g).map_err(|e| e.to_string()),
        }
    }

    pub fn decode(self, w: &[u8]) -> Result<WreathElement, String> {
        match self {
            Group::Ll => ll_decode(w).map_err(|e| e.to_string()),
            Group::GzZ2 => gz_decode(GPresentation::Z2, w).map_err(|e| e.to_string()),
            Group::GzZ => gz_decode(GPresentation::ZBinary, w).map_err(|e| e.to_string()),
            Group::F2 => f2_decode(w).map_err(|e| e.to_string()),
            Group::Grid => grid_decode(w).map_err(|e| e.to_string()),
        }
    }

    /// Generators audited by `verify`, inverses included.
    pub fn audited_generators(self) -> Vec<String> {
        let names: &[&str] = match self {
            Group::Ll => &["a", "a-1", "h"],
            Group::GzZ2 => &["a", "a-1", "h", "h-1"],
            Group::GzZ => &["a", "a-1", "g1", "g1-1"],
            Group::F2 => &["h", "a", "a-1", "b", "b-1"],
            Group::Grid => &["h", "x", "x-1", "y", "y-1"],
        };
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Convolution length for the soundness half of the audits.
    pub fn default_maxlen(self) -> usize {
        match self {
            Group::Ll | Group::GzZ2 => 8,
            Group::GzZ => 6,
            Group::F2 => 8,
            Group::Grid => 30,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Group::ALL.into_iter().find(|g| g.name() == s).ok_or_else(|| {
            let names: Vec<_> = Group::ALL.iter().map(|g| g.name()).collect();
            format!("unknown group '{s}' (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub radius: u32,
    pub maxlen: Option<usize>,
    pub ball_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { radius: 4, maxlen: None, ball_cap: DEFAULT_BALL_CAP }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundsSection {
    Plain(BoundsReport),
    Gz(GzConstants),
    Grid(GridBoundsReport),
}

impl BoundsSection {
    pub fn pass(&self) -> bool {
        match self {
            BoundsSection::Plain(r) => r.pass,
            BoundsSection::Gz(c) => c.k.is_some() && c.report.as_ref().is_some_and(|r| r.pass),
            BoundsSection::Grid(r) => r.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub group: &'static str,
    pub radius: u32,
    pub maxlen: usize,
    pub ball_size: usize,
    pub round_trip: RoundTrip,
    pub audits: Vec<AuditReport>,
    pub bounds: Option<BoundsSection>,
    /// Set when a resource cap stopped the run; the report is then partial.
    pub cap: Option<String>,
    pub pass: bool,
}

const KEEP: usize = 16;

fn round_trip(group: Group, ball: &DistanceMap) -> RoundTrip {
    let mut rt = RoundTrip::default();
    for g in ball.elements() {
        rt.checked += 1;
        let err = match group.encode(g) {
            Ok(w) => match group.decode(&w) {
                Ok(h) if &h == g => continue,
                Ok(h) => format!("decodes to {}", format_element(&h)),
                Err(e) => format!("{}: {e}", String::from_utf8_lossy(&w)),
            },
            Err(e) => e,
        };
        if rt.failures.len() < KEEP {
            rt.failures.push(format!("{}: {err}", format_element(g)));
        }
    }
    rt
}

fn is_cap(reason: &str) -> bool {
    reason.contains("resource cap exceeded") || reason.contains("run bound exceeded")
}

fn audit(group: Group, gen: &str, ball: &DistanceMap, maxlen: usize) -> Result<AuditReport, String> {
    let id = format!("{}:{gen}", group.name());
    let report = match group {
        Group::Ll => relation_audit(&id, &ll_mult_fsa(gen).map_err(|e| e.to_string())?, &LlRep::new(), gen, ball, maxlen),
        Group::GzZ2 | Group::GzZ => {
            let gp = if group == Group::GzZ2 { GPresentation::Z2 } else { GPresentation::ZBinary };
            relation_audit(&id, &gz_mult_fsa(gp, gen).map_err(|e| e.to_string())?, &GzRep::new(gp), gen, ball, maxlen)
        }
        Group::F2 => {
            let m = f2_mult_pda(gen).map_err(|e| e.to_string())?;
            relation_audit(&id, &Searched(&Configs(&m), RunBounds::default()), &F2Rep::new(), gen, ball, maxlen)
        }
        Group::Grid => {
            let r = if gen == "h" {
                grid_relation_audit(&id, &grid_h_fsa().map_err(|e| e.to_string())?, gen, ball, maxlen)
            } else {
                let dir = Dir::from_generator(gen).ok_or_else(|| RepGridError::UnknownGenerator(gen.into()).to_string())?;
                grid_relation_audit(&id, &grid_dir_sa(dir).map_err(|e| e.to_string())?, gen, ball, maxlen)
            };
            r.map_err(|e| e.to_string())?
        }
    };
    Ok(report)
}

fn bounds(group: Group, ball: &DistanceMap) -> Result<BoundsSection, String> {
    Ok(match group {
        Group::Ll => BoundsSection::Plain(ll_bounds_check(ball).map_err(|e| e.to_string())?),
        Group::GzZ2 => BoundsSection::Gz(gz_constants(GPresentation::Z2, ball, Some((1, 0)), DEFAULT_G_RADIUS).map_err(|e| e.to_string())?),
        Group::GzZ => BoundsSection::Gz(gz_constants(GPresentation::ZBinary, ball, None, DEFAULT_G_RADIUS).map_err(|e| e.to_string())?),
        Group::F2 => BoundsSection::Plain(f2_bounds_check(ball).map_err(|e| e.to_string())?),
        Group::Grid => BoundsSection::Grid(grid_bounds_check(ball, 8).map_err(|e| e.to_string())?),
    })
}

/// Runs the suite for `group`. Never fails outright: errors are recorded in
/// the report, and a resource cap sets `cap`.
pub fn verify(group: Group, opts: &VerifyOptions) -> VerifyReport {
    let maxlen = opts.maxlen.unwrap_or(group.default_maxlen());
    let mut report = VerifyReport {
        group: group.name(),
        radius: opts.radius,
        maxlen,
        ball_size: 0,
        round_trip: RoundTrip::default(),
        audits: Vec::new(),
        bounds: None,
        cap: None,
        pass: false,
    };
    let ball = match bfs_ball_with_cap(&group.spec(), opts.radius, opts.ball_cap) {
        Ok(b) => b,
        Err(e) => {
            report.cap = Some(e.to_string());
            return report;
        }
    };
    report.ball_size = ball.len();
    report.round_trip = round_trip(group, &ball);
    let mut errors = Vec::new();
    for gen in group.audited_generators() {
        match audit(group, &gen, &ball, maxlen) {
            Ok(a) => {
                if let Some(s) = a.spurious.iter().find(|s| is_cap(&s.reason)) {
                    report.cap.get_or_insert_with(|| s.reason.clone());
                }
                report.audits.push(a);
            }
            Err(e) if is_cap(&e) => {
                report.cap = Some(e);
                return report;
            }
            Err(e) => errors.push(e),
        }
    }
    match bounds(group, &ball) {
        Ok(b) => report.bounds = Some(b),
        Err(e) => errors.push(e),
    }
    report.pass = report.cap.is_none()
        && errors.is_empty()
        && report.round_trip.failures.is_empty()
        && report.audits.iter().all(|a| a.pass)
        && report.bounds.as_ref().is_some_and(BoundsSection::pass);
    report
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        let mut out = format!("group {} radius {} maxlen {} ({} elements)\n", self.group, self.radius, self.maxlen, self.ball_size);
        let rt = &self.round_trip;
        out += &format!("  round trip    {:>4}  {} elements\n", mark(rt.failures.is_empty()), rt.checked);
        for f in &rt.failures {
            out += &format!("    {f}\n");
        }
        for a in &self.audits {
            out += &format!("  audit {:<7} {:>4}  {} pairs, {} words\n", a.generator, mark(a.pass), a.checked_pairs, a.checked_words);
            for m in a.missed.iter().take(3) {
                out += &format!("    missed {} ({}/{}): {}\n", m.element, m.u, m.v, m.reason);
            }
            for s in a.spurious.iter().take(3) {
                out += &format!("    spurious {}: {}\n", s.word, s.reason);
            }
        }
        if let Some(b) = &self.bounds {
            out += &format!("  bounds        {:>4}\n", mark(b.pass()));
        }
        if let Some(c) = &self.cap {
            out += &format!("  stopped: {c}\n");
        }
        out += &format!("{}\n", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}
