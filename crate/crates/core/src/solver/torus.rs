//! Flat-torus geometry on `(-π, π]^n`: distance, and a cell hash for
//! neighbour queries at a fixed radius.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::f64::consts::PI;

const TAU: f64 = 2.0 * PI;

/// `max_k min(|Δ_k|, 2π - |Δ_k|)`.
pub fn torus_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).rem_euclid(TAU);
            d.min(TAU - d)
        })
        .fold(0.0, f64::max)
}

pub fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Buckets points into cells at least `radius` wide, so every point within
/// `radius` of a query lives in one of the `3^n` surrounding cells.
pub struct TorusHash {
    cells: i64,
    width: f64,
    radius: f64,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl TorusHash {
    pub fn new(radius: f64) -> Self {
        let cells = ((TAU / radius).floor() as i64).max(1);
        Self { cells, width: TAU / cells as f64, radius, buckets: HashMap::new() }
    }

    fn key(&self, p: &[f64]) -> Vec<i64> {
        p.iter().map(|x| (((x + PI) / self.width).floor() as i64).rem_euclid(self.cells)).collect()
    }

    pub fn insert(&mut self, p: &[f64], id: usize) {
        let key = self.key(p);
        self.buckets.entry(key).or_default().push(id);
    }

    /// Ids whose stored point lies within `radius` of `p`; `points[id]` must be
    /// the point that was inserted under `id`.
    pub fn neighbours<'a>(&'a self, p: &'a [f64], points: &'a [Vec<f64>]) -> impl Iterator<Item = usize> + 'a {
        let centre = self.key(p);
        let mut keys = vec![Vec::with_capacity(centre.len())];
        for &c in &centre {
            let mut offsets: Vec<i64> = (-1..=1).map(|o| (c + o).rem_euclid(self.cells)).collect();
            offsets.sort_unstable();
            offsets.dedup();
            keys = keys
                .into_iter()
                .flat_map(|k| {
                    offsets.iter().map(move |&o| {
                        let mut next = k.clone();
                        next.push(o);
                        next
                    })
                })
                .collect();
        }
        keys.into_iter()
            .filter_map(move |k| self.buckets.get(&k))
            .flatten()
            .copied()
            .filter(move |&id| torus_distance(&points[id], p) <= self.radius)
    }
}

/// Greedy thinning in the given order: keeps a point unless an already kept
/// point lies within `radius`. Returns the indices kept.
pub fn thin(points: &[Vec<f64>], radius: f64) -> Vec<usize> {
    let mut hash = TorusHash::new(radius);
    let mut kept = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if hash.neighbours(p, points).next().is_none() {
            hash.insert(p, i);
            kept.push(i);
        }
    }
    kept
}

/// Connected components of the graph joining points closer than `linkage`.
/// Components are listed by smallest member index; members ascending.
pub fn single_linkage(points: &[Vec<f64>], linkage: f64) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut hash = TorusHash::new(linkage);
    for (i, p) in points.iter().enumerate() {
        let near: Vec<usize> = hash.neighbours(p, points).collect();
        for j in near {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        hash.insert(p, i);
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..points.len() {
        let root = find(&mut parent, i);
        let g = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    groups
}
