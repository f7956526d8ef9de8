use super::mahler::mahler_height;
use super::roots::{complex_roots, ComplexApprox};
use crate::error::{invalid, Error, Result};
use crate::poly::IntPoly;
use std::f64::consts::{SQRT_2, TAU};

/// Half-open angular sector `[start, start + width)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectorSpec {
    start: f64,
    width: f64,
}

impl SectorSpec {
    pub fn new(start: f64, width: f64) -> Result<Self> {
        if !(0.0..=TAU).contains(&width) || !start.is_finite() {
            return invalid(format!("bad sector: start {start}, width {width}"));
        }
        Ok(Self {
            start: start.rem_euclid(TAU),
            width,
        })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn width(&self) -> f64 {
        self.width
    }
}

/// Angular distance from `a` to `b` going counterclockwise, in `[0, 2pi)`.
fn ccw(a: f64, b: f64) -> f64 {
    (b - a).rem_euclid(TAU)
}

/// Argument of a root together with the angular radius of its disk.
#[derive(Clone, Copy, Debug)]
struct Polar {
    arg: f64,
    half: f64,
}

fn polar(roots: &[ComplexApprox], start: f64) -> Result<Vec<Polar>> {
    roots
        .iter()
        .map(|z| {
            let m = z.abs();
            if m <= z.radius {
                return Err(Error::BoundaryAmbiguous { suggestion: start });
            }
            Ok(Polar {
                arg: z.arg(),
                half: (z.radius / m).min(1.0).asin() + 1e-15,
            })
        })
        .collect()
}

fn count_polar(roots: &[Polar], s: SectorSpec) -> Result<usize> {
    if s.width >= TAU {
        return Ok(roots.len());
    }
    let mut n = 0;
    for z in roots {
        for ray in [s.start, s.start + s.width] {
            let d = ccw(ray, z.arg).min(ccw(z.arg, ray));
            if d <= z.half {
                return Err(Error::BoundaryAmbiguous {
                    suggestion: (s.start + 2.0 * z.half + 1e-9).rem_euclid(TAU),
                });
            }
        }
        if ccw(s.start, z.arg) < s.width {
            n += 1;
        }
    }
    Ok(n)
}

pub fn sector_count(roots: &[ComplexApprox], s: SectorSpec) -> Result<usize> {
    if s.width >= TAU {
        return Ok(roots.len());
    }
    count_polar(&polar(roots, s.start)?, s)
}

/// `24 (d^(2/3) (log 2d)^(1/3) + d h^(1/3))`.
pub fn mignotte_rhs(d: usize, h: f64) -> f64 {
    let d = d as f64;
    24.0 * (d.powf(2.0 / 3.0) * (2.0 * d).ln().cbrt() + d * h.max(0.0).cbrt())
}

#[derive(Clone, Debug, PartialEq)]
pub struct MignotteReport {
    pub degree: usize,
    pub height: f64,
    pub rhs: f64,
    pub sectors: usize,
    /// Largest `|n - width d / 2pi|` seen.
    pub worst_deviation: f64,
    pub worst_sector: SectorSpec,
    /// `rhs - worst_deviation`; nonnegative when the inequality holds on the grid.
    pub worst_margin: f64,
    /// Supremum of `|n - width d / 2pi|` over all sectors, from the root centers.
    pub supremum: f64,
}

/// Supremum of `|n - width d / 2pi|` over every sector.
///
/// The count is piecewise constant in the two ends, so the supremum is a
/// limit at arcs ending on root arguments: closed arcs (roots at the ends
/// counted, width down to the arc length) and open arcs (ends excluded,
/// width up to the arc length).
pub fn sector_supremum(args: &[f64], d: usize) -> f64 {
    let per = d as f64 / TAU;
    let mut sup: f64 = 0.0;
    for &a in args {
        for &b in args {
            let len = ccw(a, b);
            let closed = args.iter().filter(|&&x| ccw(a, x) <= len).count();
            sup = sup.max(closed as f64 - len * per);
            // an open arc from a back to a covers everything but a's ray
            let open_len = if len == 0.0 { TAU } else { len };
            let open = args.iter().filter(|&&x| ccw(a, x) > 0.0 && ccw(a, x) < open_len).count();
            sup = sup.max(open_len * per - open as f64);
        }
    }
    sup
}

/// Evaluates the sector inequality on `starts x widths` sectors: starts
/// `2 pi k / starts + eps`, widths `2 pi m / widths` for `m = 1..=widths`.
pub fn mignotte_check(f: &IntPoly, starts: usize, widths: usize) -> Result<MignotteReport> {
    if starts == 0 || widths == 0 {
        return invalid("empty sector grid");
    }
    let d = f.deg();
    let h = mahler_height(f)?.height;
    let roots = complex_roots(f, 1e-9)?;
    mignotte_with_roots(&roots, d, h, starts, widths)
}

pub fn mignotte_with_roots(
    roots: &[ComplexApprox],
    d: usize,
    h: f64,
    starts: usize,
    widths: usize,
) -> Result<MignotteReport> {
    let rhs = mignotte_rhs(d, h);
    let roots = polar(roots, 0.0)?;
    let args: Vec<f64> = roots.iter().map(|z| z.arg).collect();
    let eps = (SQRT_2 - 1.0) * 1e-3;
    let mut worst = (-1.0, SectorSpec::new(0.0, 0.0)?);
    for k in 0..starts {
        for m in 1..=widths {
            let width = TAU * m as f64 / widths as f64;
            let mut s = SectorSpec::new(TAU * k as f64 / starts as f64 + eps, width)?;
            let n = loop {
                match count_polar(&roots, s) {
                    Ok(n) => break n,
                    Err(Error::BoundaryAmbiguous { suggestion }) => s = SectorSpec::new(suggestion, width)?,
                    Err(e) => return Err(e),
                }
            };
            let dev = (n as f64 - width * d as f64 / TAU).abs();
            if dev > worst.0 {
                worst = (dev, s);
            }
        }
    }
    Ok(MignotteReport {
        degree: d,
        height: h,
        rhs,
        sectors: starts * widths,
        worst_deviation: worst.0,
        worst_sector: worst.1,
        worst_margin: rhs - worst.0,
        supremum: sector_supremum(&args, d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn roots(c: &[i64]) -> Vec<ComplexApprox> {
        complex_roots(&IntPoly::from_i64s(c), 1e-12).unwrap()
    }

    #[test]
    fn counts() {
        let r = roots(&[1, 0, 1]);
        assert_eq!(sector_count(&r, SectorSpec::new(FRAC_PI_2 - 0.1, 0.2).unwrap()).unwrap(), 1);
        assert_eq!(sector_count(&r, SectorSpec::new(1.0, TAU).unwrap()).unwrap(), 2);
        let g = roots(&[-1, -1, 1]);
        assert_eq!(sector_count(&g, SectorSpec::new(PI - 0.05, 0.1).unwrap()).unwrap(), 1);
    }

    #[test]
    fn boundary_hits_are_reported() {
        let r = roots(&[1, 0, 1]);
        match sector_count(&r, SectorSpec::new(FRAC_PI_2, 1.0).unwrap()) {
            Err(Error::BoundaryAmbiguous { suggestion }) => {
                let n = sector_count(&r, SectorSpec::new(suggestion, 1.0).unwrap()).unwrap();
                assert_eq!(n, 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn seventh_roots_of_unity_half_plane() {
        let r = roots(&[1, 1, 1, 1, 1, 1, 1]);
        let n = sector_count(&r, SectorSpec::new(1e-3, PI).unwrap()).unwrap();
        assert_eq!(n, 3);
    }

    #[test]
    fn lehmer_grid_has_nonnegative_margins() {
        let f = IntPoly::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let rep = mignotte_check(&f, 64, 16).unwrap();
        assert!(rep.worst_margin >= 0.0);
        assert_eq!(rep.sectors, 1024);
    }

    #[test]
    fn supremum_bounds_the_grid() {
        for c in [vec![1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1], vec![-2, 0, 0, 1], vec![3, -1, 0, 2, 1, -5, 1]] {
            let f = IntPoly::from_i64s(&c);
            let rep = mignotte_check(&f, 64, 16).unwrap();
            assert!(rep.supremum + 1e-9 >= rep.worst_deviation, "{c:?}");
        }
        // roots of unity: n - width d / 2pi never exceeds 1
        let r = roots(&[-1, 0, 0, 0, 0, 1]);
        let args: Vec<f64> = r.iter().map(|z| z.arg()).collect();
        let s = sector_supremum(&args, 5);
        assert!((s - 1.0).abs() < 1e-9, "{s}");
        // all roots on one ray: a thin sector holds all three
        assert!((sector_supremum(&[0.5, 0.5, 0.5], 3) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn grid_partitions_sum_to_degree() {
        let r = roots(&[3, -1, 0, 2, 1, -5, 1]);
        let k = 16;
        let total: usize = (0..k)
            .map(|i| sector_count(&r, SectorSpec::new(0.013 + TAU * i as f64 / k as f64, TAU / k as f64).unwrap()).unwrap())
            .sum();
        assert_eq!(total, 6);
    }
}
