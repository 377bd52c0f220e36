//! The Carter band surface of a round diagram as a combinatorial map.
//!
//! Each classical crossing is a 4-valent vertex and each arc between
//! consecutive endpoints an edge. A crossing of sign `s` has four darts
//! listed counterclockwise as
//!
//! ```text
//! s = +  : over-out, under-out, over-in, under-in
//! s = -  : over-out, under-in,  over-in, under-out
//! ```
//!
//! which is the order of the outgoing directions when (over, under) is a
//! positive frame for `+` and a negative one for `-`. Faces are the orbits of
//! `sigma . alpha`; they are the boundary circles capped by disks.

use thiserror::Error;

use crate::gauss::{Endpoint, GaussDiagram, Role, Sign};
use crate::search::{self, SearchBudget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("the band surface is built from round diagrams (take the closure first)")]
    LongDiagram,
}

const OVER_IN: usize = 0;
const OVER_OUT: usize = 1;
const UNDER_IN: usize = 2;
const UNDER_OUT: usize = 3;

/// Darts `4i..4i+4` belong to the crossing with id `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialMap {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
}

impl CombinatorialMap {
    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.alpha.len() / 4
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn alpha(&self, dart: usize) -> usize {
        self.alpha[dart]
    }

    pub fn sigma(&self, dart: usize) -> usize {
        self.sigma[dart]
    }

    /// Checks that alpha is a fixed-point-free involution and sigma a
    /// 4-cycle on each vertex.
    pub fn is_valid(&self) -> bool {
        let n = self.alpha.len();
        if self.sigma.len() != n || !n.is_multiple_of(4) {
            return false;
        }
        let alpha_ok = (0..n)
            .all(|d| self.alpha[d] != d && self.alpha[d] < n && self.alpha[self.alpha[d]] == d);
        let sigma_ok = (0..n).step_by(4).all(|v| {
            let mut d = v;
            let mut seen = [false; 4];
            for _ in 0..4 {
                if d / 4 != v / 4 || seen[d % 4] {
                    return false;
                }
                seen[d % 4] = true;
                d = self.sigma[d];
            }
            d == v
        });
        alpha_ok && sigma_ok
    }

    /// Number of orbits of `sigma . alpha`.
    pub fn trace_faces(&self) -> usize {
        self.orbits(|d| self.sigma[self.alpha[d]]).len()
    }

    /// Number of orbits of `alpha . sigma`; conjugate to the above.
    pub fn trace_faces_alt(&self) -> usize {
        self.orbits(|d| self.alpha[self.sigma[d]]).len()
    }

    fn orbits(&self, step: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.alpha.len()];
        let mut out = Vec::new();
        for start in 0..self.alpha.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                orbit.push(d);
                d = step(d);
            }
            out.push(orbit);
        }
        out
    }
}

fn out_dart(e: Endpoint) -> usize {
    4 * (e.id as usize - 1)
        + if e.role == Role::Over {
            OVER_OUT
        } else {
            UNDER_OUT
        }
}

fn in_dart(e: Endpoint) -> usize {
    4 * (e.id as usize - 1)
        + if e.role == Role::Over {
            OVER_IN
        } else {
            UNDER_IN
        }
}

pub fn build_map(d: &GaussDiagram) -> Result<CombinatorialMap, SurfaceError> {
    if d.is_long() {
        return Err(SurfaceError::LongDiagram);
    }
    let n = 4 * d.crossing_count();
    let mut alpha = vec![usize::MAX; n];
    for comp in d.components() {
        for (j, &e) in comp.iter().enumerate() {
            let next = comp[(j + 1) % comp.len()];
            alpha[out_dart(e)] = in_dart(next);
            alpha[in_dart(next)] = out_dart(e);
        }
    }
    let mut sigma = vec![0; n];
    for (i, sign) in d.signs().iter().enumerate() {
        let ccw = match sign {
            Sign::Pos => [OVER_OUT, UNDER_OUT, OVER_IN, UNDER_IN],
            Sign::Neg => [OVER_OUT, UNDER_IN, OVER_IN, UNDER_OUT],
        };
        for k in 0..4 {
            sigma[4 * i + ccw[k]] = 4 * i + ccw[(k + 1) % 4];
        }
    }
    Ok(CombinatorialMap { alpha, sigma })
}

pub fn trace_faces(m: &CombinatorialMap) -> usize {
    m.trace_faces()
}

/// Carter surface data. Chordless circles count as spheres (two faces each).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CarterReport {
    pub crossings: usize,
    pub faces: usize,
    pub euler: i64,
    pub genus: u64,
    pub pieces: usize,
}

impl std::fmt::Display for CarterReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "crossings={} faces={} euler={} genus={}",
            self.crossings, self.faces, self.euler, self.genus
        )
    }
}

pub fn carter_report(d: &GaussDiagram) -> Result<CarterReport, SurfaceError> {
    let map = build_map(d)?;
    let n = d.crossing_count();

    // band-graph pieces: crossings joined along arcs
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for comp in d.components() {
        for w in comp.windows(2) {
            let (a, b) = (
                find(&mut parent, w[0].id as usize - 1),
                find(&mut parent, w[1].id as usize - 1),
            );
            parent[a] = b;
        }
    }

    let mut vertices = vec![0i64; n];
    let mut faces = vec![0i64; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        vertices[r] += 1;
    }
    for orbit in map.orbits(|x| map.sigma[map.alpha[x]]) {
        let r = find(&mut parent, orbit[0] / 4);
        faces[r] += 1;
    }

    let spheres = d.components().iter().filter(|c| c.is_empty()).count();
    let mut report = CarterReport {
        crossings: n,
        faces: 2 * spheres,
        euler: 2 * spheres as i64,
        genus: 0,
        pieces: spheres,
    };
    for r in 0..n {
        if vertices[r] == 0 {
            continue;
        }
        // V - E + F with E = 2V
        let chi = faces[r] - vertices[r];
        assert!(
            chi <= 2 && chi % 2 == 0,
            "band surface piece with Euler characteristic {chi}"
        );
        report.faces += faces[r] as usize;
        report.euler += chi;
        report.genus += ((2 - chi) / 2) as u64;
        report.pieces += 1;
    }
    Ok(report)
}

pub fn carter_genus(d: &GaussDiagram) -> Result<u64, SurfaceError> {
    Ok(carter_report(d)?.genus)
}

/// Least Carter genus over the diagrams visited by an R-move reduction
/// search. An upper bound for the virtual genus.
pub fn genus_upper_bound(d: &GaussDiagram, budget: &SearchBudget) -> Result<u64, SurfaceError> {
    if d.is_long() {
        return Err(SurfaceError::LongDiagram);
    }
    Ok(search::reduce(d, budget).genus_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_gauss;

    fn report(s: &str) -> CarterReport {
        carter_report(&parse_gauss(s).unwrap()).unwrap()
    }

    #[test]
    fn map_counts() {
        let m = build_map(&parse_gauss("O1+U1+").unwrap()).unwrap();
        assert_eq!(
            (m.vertex_count(), m.edge_count(), m.dart_count()),
            (1, 2, 4)
        );
        assert!(m.is_valid());
        let m = build_map(&parse_gauss("O1+U2+O3+U1+O2+U3+").unwrap()).unwrap();
        assert_eq!(
            (m.vertex_count(), m.edge_count(), m.dart_count()),
            (3, 6, 12)
        );
        let m = build_map(&parse_gauss("").unwrap()).unwrap();
        assert_eq!(m.dart_count(), 0);
        assert!(build_map(&parse_gauss("L:O1+U1+").unwrap()).is_err());
    }

    #[test]
    fn known_genera() {
        assert_eq!(report("O1+U1+").faces, 3);
        assert_eq!(report("O1+U2+O3+U1+O2+U3+").faces, 5);
        assert_eq!(report("O1+U2+O3+U1+O2+U3+").genus, 0);
        let vt = report("O1+O2+U1+U2+");
        assert_eq!((vt.faces, vt.euler, vt.genus), (2, 0, 1));
        assert_eq!(report("").genus, 0);
        assert_eq!(report("()").genus, 0);
        assert_eq!(report("()").euler, 2);
    }

    #[test]
    fn split_pieces_add() {
        let vt = report("O1+O2+U1+U2+;O3+O4+U3+U4+");
        assert_eq!((vt.pieces, vt.genus), (2, 2));
        let r = report("O1+U1+;()");
        assert_eq!((r.pieces, r.genus, r.euler), (2, 0, 4));
    }
}
