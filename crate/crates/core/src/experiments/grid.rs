use serde::Serialize;

use crate::bounds::{pto_lower, tri_lower};
use crate::distances::DistanceFunction;
use crate::error::{Error, Result};
use crate::objects::VectorObj;

/// A regular grid of `nx × ny` points spanning `[xmin, xmax] × [ymin, ymax]`
/// (both ends included), plus the query and pivots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
    pub q: [f64; 2],
    pub p: [f64; 2],
    pub s: [f64; 2],
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            xmin: -3.0,
            xmax: 3.0,
            ymin: -3.0,
            ymax: 3.0,
            nx: 61,
            ny: 61,
            q: [-1.0, 0.0],
            p: [0.0, 0.0],
            s: [1.0, 0.0],
        }
    }
}

impl GridSpec {
    pub fn x(&self, i: usize) -> f64 {
        axis(self.xmin, self.xmax, self.nx, i)
    }

    pub fn y(&self, j: usize) -> f64 {
        axis(self.ymin, self.ymax, self.ny, j)
    }
}

fn axis(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if n == 1 {
        lo
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GridCell {
    pub x: f64,
    pub y: f64,
    pub distance: f64,
    pub tri_ratio: f64,
    pub pto_ratio: f64,
}

fn point(c: [f64; 2]) -> Result<VectorObj> {
    VectorObj::new(c.to_vec())
}

/// Bound-to-distance ratios at `o`: triangular with the better of `p` and
/// `s`, Ptolemaic with the pair `(p, s)`. Ratios are clamped to `[0, 1]`,
/// and a point at distance 0 from `q` gets ratio 1.
pub fn grid_ratios_at(
    d: &DistanceFunction<VectorObj>,
    q: [f64; 2],
    p: [f64; 2],
    s: [f64; 2],
    o: [f64; 2],
) -> Result<GridCell> {
    let (q, p, s, ov) = (point(q)?, point(p)?, point(s)?, point(o)?);
    let dm = d.metric();
    let (qp, qs, ps) = (dm.eval(&q, &p)?, dm.eval(&q, &s)?, dm.eval(&p, &s)?);
    let (op, os, qo) = (dm.eval(&ov, &p)?, dm.eval(&ov, &s)?, dm.eval(&q, &ov)?);
    let tri = tri_lower(qp, op).max(tri_lower(qs, os));
    let pto = pto_lower(qp, qs, op, os, ps)?;
    let ratio = |lb: f64| {
        if qo == 0.0 {
            1.0
        } else {
            (lb / qo).clamp(0.0, 1.0)
        }
    };
    Ok(GridCell {
        x: o[0],
        y: o[1],
        distance: qo,
        tri_ratio: ratio(tri),
        pto_ratio: ratio(pto),
    })
}

/// Ratios over the whole grid, rows of constant `y` in ascending order.
pub fn bound_accuracy_grid(
    d: &DistanceFunction<VectorObj>,
    spec: &GridSpec,
) -> Result<Vec<GridCell>> {
    if spec.nx == 0 || spec.ny == 0 {
        return Err(Error::param("grid needs at least one point per axis"));
    }
    let mut cells = Vec::with_capacity(spec.nx * spec.ny);
    for j in 0..spec.ny {
        for i in 0..spec.nx {
            cells.push(grid_ratios_at(
                d,
                spec.q,
                spec.p,
                spec.s,
                [spec.x(i), spec.y(j)],
            )?);
        }
    }
    Ok(cells)
}
