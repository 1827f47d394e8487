//! Search for reflexive polytopes inside a coordinate box, one canonical
//! representative per automorphism orbit.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::is_reflexive;
use crate::exactmath::{is_primitive, rat, IntVec, RatVec, Rational};
use crate::horospace::HoroSpace;
use crate::polytope::RationalPolytope;

/// Environment variable fixing the number of enumeration workers.
pub const WORKERS_ENV: &str = "HOROFANO_WORKERS";

/// Worker count from the environment, else the machine's parallelism.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&k| k > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|k| k.get()).unwrap_or(1))
}

fn in_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(worker_count()).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Possible vertices: primitive lattice points in `[−B, B]ⁿ` and the color points.
pub fn candidate_points(space: &HoroSpace, bound: i64) -> Vec<RatVec> {
    let n = space.n();
    let mut pts: Vec<RatVec> = (0..n)
        .map(|_| -bound..=bound)
        .multi_cartesian_product()
        .filter(|p| p.iter().any(|&x| x != 0))
        .filter(|p| is_primitive(&p.iter().map(|&x| x.into()).collect::<IntVec>()))
        .map(|p| p.iter().map(|&x| rat(x, 1)).collect())
        .collect();
    pts.extend(space.color_points().into_iter().filter(|p| p.iter().any(|x| !x.is_zero())));
    pts.sort();
    pts.dedup();
    pts
}

/// Candidate points scaled by the lcm `L` of the `a_α`, as exact `i64` pairs.
fn scaled_plane_points(space: &HoroSpace, bound: i64) -> (i64, Vec<[i64; 2]>) {
    let l = space.colors().iter().fold(1i64, |acc, c| acc.lcm(&c.a));
    let pts = candidate_points(space, bound)
        .iter()
        .map(|p| {
            let f = |x: &Rational| (x * Rational::from_integer(l.into())).to_integer().to_i64().expect("small");
            [f(&p[0]), f(&p[1])]
        })
        .collect();
    (l, pts)
}

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn turn(a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> i64 {
    det([b[0] - a[0], b[1] - a[1]], [c[0] - b[0], c[1] - b[1]])
}

/// Counter-clockwise edge `p → q` of a reflexive polygon: the origin lies
/// strictly to its left, the dual vertex is integral and every color point
/// lies on the inner side.
fn valid_edge(l: i64, p: [i64; 2], q: [i64; 2], colors: &[[i64; 2]]) -> bool {
    let ds = det(p, q);
    if ds <= 0 {
        return false;
    }
    let (nx, ny) = (l * (p[1] - q[1]), l * (q[0] - p[0]));
    if nx % ds != 0 || ny % ds != 0 {
        return false;
    }
    let v = [nx / ds, ny / ds];
    colors.iter().all(|c| v[0] * c[0] + v[1] * c[1] >= -l)
}

/// Every reflexive polygon with vertices among the candidates, as vertex lists.
///
/// Polygons are walked counter-clockwise from their least-indexed vertex, with
/// strictly increasing angle and strict left turns, so each is found once.
pub fn raw_reflexive_rank2(space: &HoroSpace, bound: i64) -> Vec<Vec<RatVec>> {
    assert_eq!(space.n(), 2, "planar search needs rank 2");
    let (l, pts) = scaled_plane_points(space, bound);
    let colors: Vec<[i64; 2]> = space
        .color_points()
        .iter()
        .map(|p| {
            let f = |x: &Rational| (x * Rational::from_integer(l.into())).to_integer().to_i64().expect("small");
            [f(&p[0]), f(&p[1])]
        })
        .collect();
    let m = pts.len();
    let edges: Vec<Vec<bool>> =
        (0..m).map(|i| (0..m).map(|j| i != j && valid_edge(l, pts[i], pts[j], &colors)).collect()).collect();

    let found: Vec<Vec<usize>> = in_pool(|| {
        (0..m)
            .into_par_iter()
            .flat_map_iter(|s| {
                let mut out = Vec::new();
                let order = angular_order(&pts, s);
                let mut path = vec![s];
                walk(&pts, &edges, &order, 0, &mut path, &mut out);
                out
            })
            .collect()
    });
    let unscale = |p: [i64; 2]| -> RatVec { vec![rat(p[0], l), rat(p[1], l)] };
    found.into_iter().map(|cycle| cycle.into_iter().map(|i| unscale(pts[i])).collect()).collect()
}

/// Points of index above `s`, sorted by angle measured from `s`, with angle-class ids.
fn angular_order(pts: &[[i64; 2]], s: usize) -> Vec<(usize, usize)> {
    let o = pts[s];
    let half = |w: [i64; 2]| -> Option<u8> {
        let d = det(o, w);
        let dp = o[0] * w[0] + o[1] * w[1];
        if d > 0 {
            Some(0)
        } else if d == 0 && dp > 0 {
            None
        } else {
            Some(1)
        }
    };
    let mut ws: Vec<(u8, usize)> = (s + 1..pts.len()).filter_map(|w| half(pts[w]).map(|h| (h, w))).collect();
    ws.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| 0.cmp(&det(pts[a.1], pts[b.1]))).then(a.1.cmp(&b.1)));
    let mut out = Vec::with_capacity(ws.len());
    let mut class = 0;
    for (k, &(h, w)) in ws.iter().enumerate() {
        if k > 0 {
            let (ph, pw) = ws[k - 1];
            if ph != h || det(pts[pw], pts[w]) != 0 {
                class += 1;
            }
        }
        out.push((w, class + 1));
    }
    out
}

fn walk(
    pts: &[[i64; 2]],
    edges: &[Vec<bool>],
    order: &[(usize, usize)],
    from: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let s = path[0];
    let last = *path.last().expect("nonempty");
    let last_class = if path.len() == 1 { 0 } else { order[from - 1].1 };
    if path.len() >= 3 {
        let prev = path[path.len() - 2];
        if edges[last][s] && turn(pts[prev], pts[last], pts[s]) > 0 && turn(pts[last], pts[s], pts[path[1]]) > 0 {
            out.push(path.clone());
        }
    }
    for k in from..order.len() {
        let (w, class) = order[k];
        if class == last_class || !edges[last][w] {
            continue;
        }
        if path.len() >= 2 && turn(pts[path[path.len() - 2]], pts[last], pts[w]) <= 0 {
            continue;
        }
        path.push(w);
        walk(pts, edges, order, k + 1, path, out);
        path.pop();
    }
}

/// Exhaustive search over candidate subsets of size `n+1 ..= max_vertices`
/// that are exactly the vertex sets of reflexive polytopes.
pub fn raw_reflexive_by_subsets(space: &HoroSpace, bound: i64, max_vertices: usize) -> Vec<Vec<RatVec>> {
    let n = space.n();
    let cands = candidate_points(space, bound);
    let sizes: Vec<usize> = (n + 1..=max_vertices.min(cands.len())).collect();
    in_pool(|| {
        sizes
            .into_iter()
            .flat_map(|k| (0..cands.len()).combinations(k).collect::<Vec<_>>())
            .par_bridge()
            .filter_map(|subset| {
                let pts: Vec<RatVec> = subset.iter().map(|&i| cands[i].clone()).collect();
                let q = RationalPolytope::hull(&pts).ok()?;
                (q.vertices().len() == pts.len() && is_reflexive(space, &q)).then(|| q.vertices().to_vec())
            })
            .collect()
    })
}

fn max_abs(q: &RationalPolytope) -> Rational {
    q.vertices().iter().flatten().map(|x| x.abs()).max().unwrap_or_default()
}

/// Default vertex cap for the subset search in rank ≥ 3.
pub fn default_max_vertices(n: usize) -> usize {
    if n <= 2 {
        2 * n.max(1) + 2
    } else {
        n + 2
    }
}

/// Reflexive polytopes whose canonical form has all coordinates in `[−B, B]`,
/// sorted by vertex list.
///
/// Rank ≤ 2 is complete for the box; rank ≥ 3 uses subset search with at most
/// [`default_max_vertices`] vertices, which is best-effort.
pub fn enumerate_reflexive(space: &HoroSpace, bound: i64) -> Vec<RationalPolytope> {
    enumerate_reflexive_with(space, bound, default_max_vertices(space.n()))
}

/// As [`enumerate_reflexive`], with an explicit vertex cap for rank ≥ 3.
pub fn enumerate_reflexive_with(space: &HoroSpace, bound: i64, max_vertices: usize) -> Vec<RationalPolytope> {
    let n = space.n();
    let raw = match n {
        0 => Vec::new(),
        2 => raw_reflexive_rank2(space, bound),
        1 => raw_reflexive_by_subsets(space, bound, 2),
        _ => raw_reflexive_by_subsets(space, bound, max_vertices),
    };
    let limit = Rational::from_integer(bound.into());
    let canon: Vec<RationalPolytope> = in_pool(|| {
        raw.into_par_iter()
            .filter_map(|verts| {
                let q = RationalPolytope::hull(&verts).ok()?;
                if !is_reflexive(space, &q) {
                    return None;
                }
                let c = space.auto_canonicalize(&q);
                (max_abs(&c) <= limit).then_some(c)
            })
            .collect()
    });
    let unique: BTreeMap<Vec<RatVec>, RationalPolytope> =
        canon.into_iter().map(|q| (q.vertices().to_vec(), q)).collect();
    unique.into_values().collect()
}

/// Lattice automorphisms permuting the color points (respecting `a_α`), one
/// per induced permutation; the identity comes first.
///
/// Extensions are searched among matrices with entries in `{−1, 0, 1}`, which
/// covers every case of rank ≤ 3 met in practice.
pub fn color_permutation_maps(space: &HoroSpace) -> Vec<Vec<Vec<i64>>> {
    let n = space.n();
    let colors = space.colors();
    let vecs: Vec<Vec<i64>> =
        colors.iter().map(|c| c.vector.iter().map(|x| x.to_i64().expect("small")).collect()).collect();
    let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut out = vec![id];
    if colors.len() < 2 || n > 3 {
        return out;
    }
    let mut seen = std::collections::BTreeSet::new();
    seen.insert((0..colors.len()).collect::<Vec<_>>());
    for entries in (0..n * n).map(|_| -1i64..=1).multi_cartesian_product() {
        let m: Vec<Vec<i64>> = entries.chunks(n).map(|r| r.to_vec()).collect();
        let image = |v: &[i64]| -> Vec<i64> { m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect() };
        let perm: Option<Vec<usize>> = vecs
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let w = image(v);
                (0..vecs.len()).find(|&j| vecs[j] == w && colors[j].a == colors[i].a)
            })
            .collect();
        let Some(perm) = perm else { continue };
        if seen.contains(&perm) || perm.iter().collect::<std::collections::BTreeSet<_>>().len() != perm.len() {
            continue;
        }
        let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
        let det = crate::exactmath::IntMatrix::from_i64(&rows).determinant();
        if det.abs() == num_bigint::BigInt::from(1) {
            seen.insert(perm);
            out.push(m);
        }
    }
    out
}

/// Merges canonical representatives that differ by a color-permuting
/// automorphism, keeping the least representative of each class.
pub fn merge_color_permutations(space: &HoroSpace, polytopes: &[RationalPolytope]) -> Vec<RationalPolytope> {
    let maps = color_permutation_maps(space);
    let mut classes: BTreeMap<Vec<RatVec>, RationalPolytope> = BTreeMap::new();
    for q in polytopes {
        let key = maps
            .iter()
            .map(|m| {
                let rows: Vec<RatVec> = m.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
                let image = q.map_linear(&rows).expect("automorphism");
                space.auto_canonicalize(&image).vertices().to_vec()
            })
            .min()
            .expect("identity present");
        classes.entry(key).or_insert_with(|| q.clone());
    }
    classes.into_values().collect()
}

/// Result of re-running the search with growing boxes.
#[derive(Clone, Debug)]
pub struct StableEnumeration {
    pub polytopes: Vec<RationalPolytope>,
    /// `(bound, count)` for every box tried.
    pub history: Vec<(i64, usize)>,
    /// Whether the count held for `patience` consecutive boxes before `max_bound`.
    pub stable: bool,
}

/// Grows the box from `start` until the count is unchanged across
/// `patience` consecutive bounds, or `max_bound` is reached.
pub fn enumerate_until_stable(space: &HoroSpace, start: i64, max_bound: i64, patience: usize) -> StableEnumeration {
    let patience = patience.max(2);
    let mut history: Vec<(i64, usize)> = Vec::new();
    let mut b = start.max(1);
    loop {
        let polytopes = enumerate_reflexive(space, b);
        history.push((b, polytopes.len()));
        let tail = &history[history.len().saturating_sub(patience)..];
        let stable = tail.len() == patience && tail.iter().all(|&(_, c)| c == polytopes.len());
        if stable || b >= max_bound {
            return StableEnumeration { polytopes, history, stable };
        }
        b += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    #[test]
    fn sl2_mod_u_has_two() {
        let s = HoroSpace::mod_unipotent(&[(Family::A, 1)], 0).unwrap();
        let all = enumerate_reflexive(&s, 3);
        let verts: Vec<Vec<RatVec>> = all.iter().map(|q| q.vertices().to_vec()).collect();
        assert_eq!(verts, vec![vec![vec![rat(-1, 1)], vec![rat(1, 2)]], vec![vec![rat(-1, 1)], vec![rat(1, 1)]]]);
    }

    #[test]
    fn planar_walk_matches_subsets() {
        for space in [
            HoroSpace::toric(2),
            HoroSpace::mod_unipotent(&[(Family::A, 1), (Family::A, 1)], 0).unwrap(),
        ] {
            let mut a: Vec<Vec<RatVec>> =
                raw_reflexive_rank2(&space, 1).into_iter().map(|mut v| { v.sort(); v }).collect();
            let mut b = raw_reflexive_by_subsets(&space, 1, 12);
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn toric_plane_count() {
        let run = enumerate_until_stable(&HoroSpace::toric(2), 1, 8, 3);
        assert!(run.stable);
        assert_eq!(run.polytopes.len(), 16);
    }

    #[test]
    fn swap_of_two_colors() {
        let s = HoroSpace::mod_unipotent(&[(Family::A, 1), (Family::A, 1)], 0).unwrap();
        assert_eq!(color_permutation_maps(&s).len(), 2);
        assert_eq!(color_permutation_maps(&HoroSpace::toric(2)).len(), 1);
        let all = enumerate_reflexive(&s, 1);
        let merged = merge_color_permutations(&s, &all);
        assert!(merged.len() < all.len() && 2 * merged.len() >= all.len());
    }
}
