//! The standard corner simplex `Δ^k = {x ∈ ℝ^k : x_i ≥ 0, Σ x_i ≤ 1}`:
//! sample grids, face inclusions, and a midpoint quadrature mesh.
//!
//! The quadrature mesh is the scale-`1/n` Freudenthal (Kuhn) triangulation
//! restricted to the simplex. Working in order-coordinates
//! `O^k = {1 ≥ y₁ ≥ … ≥ y_k ≥ 0}` (a unimodular linear image of `Δ^k`),
//! the mesh cells are exactly the lattice Kuhn simplices contained in `O^k`;
//! there are `n^k` of them, each of volume `1/(k! n^k)`, so the midpoint rule
//! over their barycenters integrates affine functions exactly.

use std::sync::Arc;

use smallvec::SmallVec;

use crate::affine::AffineMap;
use crate::point::Point;
use crate::space::{euclidean_dist, Space};

/// Domain of a Lipschitz `k`-simplex.
#[derive(Debug, Clone)]
pub struct SimplexDomain {
    k: usize,
    name: String,
}

impl SimplexDomain {
    pub fn new(k: usize) -> Arc<Self> {
        Arc::new(SimplexDomain {
            k,
            name: format!("Delta^{k}"),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `vol(Δ^k) = 1/k!`.
    pub fn volume(&self) -> f64 {
        1.0 / factorial(self.k)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.k
            && x.iter().all(|&c| c >= -tol)
            && x.iter().sum::<f64>() <= 1.0 + tol
    }

    /// Principal-lattice sample grid `{v/n : v ∈ ℤ^k_{≥0}, Σv ≤ n}` together
    /// with its axis-neighbor pairs.
    pub fn grid(&self, n: usize) -> (Vec<Point>, Vec<(usize, usize)>) {
        assert!(n >= 1);
        let mut points = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mut v = vec![0usize; self.k];
        enumerate_lattice(&mut v, 0, n, &mut |v| {
            let idx = points.len();
            index.insert(v.to_vec(), idx);
            points.push(Point::new(v.iter().map(|&c| c as f64 / n as f64)));
        });
        let mut adjacency = Vec::new();
        let mut v = vec![0usize; self.k];
        enumerate_lattice(&mut v, 0, n, &mut |v| {
            let idx = index[v];
            for j in 0..self.k {
                if v.iter().sum::<usize>() < n {
                    let mut w = v.to_vec();
                    w[j] += 1;
                    if let Some(&widx) = index.get(&w) {
                        adjacency.push((idx, widx));
                    }
                }
            }
        });
        (points, adjacency)
    }

    /// Visit every quadrature cell at mesh parameter `n` as
    /// `(barycenter, volume)`. Cells partition the simplex.
    pub fn for_each_cell(&self, n: usize, mut f: impl FnMut(&[f64], f64)) {
        assert!(n >= 1);
        let k = self.k;
        if k == 0 {
            f(&[], 1.0);
            return;
        }
        let vol = 1.0 / (factorial(k) * (n as f64).powi(k as i32));
        let perms = permutations(k);
        // Vertices of a candidate Kuhn cell in integer order-coordinates.
        let mut verts = vec![vec![0i64; k]; k + 1];
        let mut cube = vec![0i64; k];
        let mut bary = vec![0.0f64; k];
        enumerate_sorted_cubes(&mut cube, 0, n as i64, &mut |cube| {
            'perm: for p in &perms {
                verts[0].copy_from_slice(cube);
                for j in 0..k {
                    let (head, tail) = verts.split_at_mut(j + 1);
                    tail[0].copy_from_slice(&head[j]);
                    tail[0][p[j]] += 1;
                }
                for v in verts.iter() {
                    if v[0] > n as i64 {
                        continue 'perm;
                    }
                    for i in 0..k - 1 {
                        if v[i] < v[i + 1] {
                            continue 'perm;
                        }
                    }
                }
                // Barycenter in order-coordinates, pushed through the
                // unimodular map y ↦ (y_i − y_{i+1}) and the 1/n scaling.
                let scale = 1.0 / ((k + 1) as f64 * n as f64);
                for i in 0..k {
                    let yi: i64 = verts.iter().map(|v| v[i]).sum();
                    let yi1: i64 = if i + 1 < k {
                        verts.iter().map(|v| v[i + 1]).sum()
                    } else {
                        0
                    };
                    bary[i] = (yi - yi1) as f64 * scale;
                }
                f(&bary, vol);
            }
        });
    }

    /// Number of quadrature cells at mesh parameter `n` (`n^k`).
    pub fn cell_count(&self, n: usize) -> usize {
        n.pow(self.k as u32)
    }
}

impl Space for SimplexDomain {
    fn dist(&self, a: &Point, b: &Point) -> f64 {
        euclidean_dist(a.coords(), b.coords())
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn coord_len(&self) -> usize {
        self.k
    }
}

fn enumerate_lattice(v: &mut Vec<usize>, pos: usize, budget: usize, f: &mut impl FnMut(&[usize])) {
    if pos == v.len() {
        f(v);
        return;
    }
    for c in 0..=budget {
        v[pos] = c;
        enumerate_lattice(v, pos + 1, budget - c, f);
    }
}

fn enumerate_sorted_cubes(c: &mut Vec<i64>, pos: usize, n: i64, f: &mut impl FnMut(&[i64])) {
    if pos == c.len() {
        f(c);
        return;
    }
    let hi = if pos == 0 { n - 1 } else { c[pos - 1] };
    for v in 0..=hi {
        c[pos] = v;
        enumerate_sorted_cubes(c, pos + 1, n, f);
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..k).collect();
    permute(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute(items: &mut Vec<usize>, pos: usize, out: &mut Vec<Vec<usize>>) {
    if pos == items.len() {
        out.push(items.clone());
        return;
    }
    for i in pos..items.len() {
        items.swap(pos, i);
        permute(items, pos + 1, out);
        items.swap(pos, i);
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Affine inclusion of the `i`-th face `Δ^{k-1} → Δ^k`.
///
/// Face `i` omits vertex `v_i`, where `v_0` is the origin and `v_i = e_i`;
/// the inclusion preserves the order of the remaining vertices. These choices
/// fix every boundary sign downstream.
pub fn face_map(k: usize, i: usize) -> AffineMap {
    assert!(k >= 1 && i <= k);
    let rows = k;
    let cols = k - 1;
    let mut matrix = vec![0.0; rows * cols];
    let mut offset = vec![0.0; rows];
    if i == 0 {
        // w_j ↦ v_{j+1}: y_1 = 1 − Σ x, y_{j+1} = x_j.
        offset[0] = 1.0;
        for c in 0..cols {
            matrix[c] = -1.0;
        }
        for j in 1..=cols {
            matrix[j * cols + (j - 1)] = 1.0;
        }
    } else {
        // Insert a zero at slot i.
        for m in 1..=k {
            if m < i {
                matrix[(m - 1) * cols + (m - 1)] = 1.0;
            } else if m > i {
                matrix[(m - 1) * cols + (m - 2)] = 1.0;
            }
        }
    }
    AffineMap::new(rows, cols, matrix, offset)
}

/// Inclusion `Δ^k → Δ^k × I ⊂ ℝ^{k+1}` at height `t`.
pub fn level_map(k: usize, t: f64) -> AffineMap {
    let rows = k + 1;
    let cols = k;
    let mut matrix = vec![0.0; rows * cols];
    for j in 0..k {
        matrix[j * cols + j] = 1.0;
    }
    let mut offset = vec![0.0; rows];
    offset[k] = t;
    AffineMap::new(rows, cols, matrix, offset)
}

/// Vertex `v_i` of `Δ^k` (`v_0` the origin, `v_i = e_i`).
pub fn vertex(k: usize, i: usize) -> SmallVec<[f64; 6]> {
    assert!(i <= k);
    let mut v = SmallVec::from_elem(0.0, k);
    if i >= 1 {
        v[i - 1] = 1.0;
    }
    v
}
