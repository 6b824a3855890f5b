use std::fmt::Write as _;

use crate::assembly::Discretization;
use crate::geometry::Point2;
use crate::solver::{CoupledState, IterationHistory};
use crate::{Error, Result};

pub(crate) struct ProfileRow {
    pub s: f64,
    pub x: Point2,
    pub pressure: f64,
    pub width: f64,
}

/// Fracture pressure and crack width b_h = [[u_h]]·ν at the fracture vertices.
pub(crate) fn fracture_profile(disc: &Discretization, state: &CoupledState) -> Result<Vec<ProfileRow>> {
    let frac = disc.geom().fracture.as_ref().ok_or_else(|| Error::Analysis("no fracture".into()))?;
    let arc = frac.arc_lengths();
    let n = frac.n_vertices();
    let mut rows = Vec::with_capacity(n);
    for (k, &s) in arc.iter().enumerate() {
        let width = if k == n - 1 && frac.has_tip {
            0.0
        } else {
            let nu = frac.normal(k.min(frac.n_segments() - 1));
            let (jump, _) = disc.space.displacement_jump_average(&state.u, s)?;
            jump[0] * nu.x + jump[1] * nu.y
        };
        rows.push(ProfileRow { s, x: frac.vertices[k], pressure: state.p_frac[k], width });
    }
    Ok(rows)
}

pub fn fracture_profile_csv(disc: &Discretization, state: &CoupledState) -> Result<String> {
    let mut s = String::from("# columns: s [m], x [m], y [m], fracture_pressure [Pa], width [m]\ns,x,y,fracture_pressure,width\n");
    for r in fracture_profile(disc, state)? {
        let _ = writeln!(s, "{:e},{:e},{:e},{:e},{:e}", r.s, r.x.x, r.x.y, r.pressure, r.width);
    }
    Ok(s)
}

/// One row per fixed-point iteration.
pub fn history_csv(h: &IterationHistory) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# err: {}{}",
        h.metric,
        if h.reference_mode { " (against the last iterate)" } else { " (successive iterates)" }
    );
    s.push_str("# columns: iteration [-], err [-], err_u [-], err_p [-], err_pf [-], width_min [m], width_max [m]\n");
    s.push_str("iteration,err,err_u,err_p,err_pf,width_min,width_max\n");
    // successive differences start at the second iterate
    let offset = if h.reference_mode { 0 } else { 1 };
    for (k, (e, f)) in h.errors.iter().zip(&h.field_errors).enumerate() {
        let w = h.width_range.get(k + offset).copied().unwrap_or([f64::NAN; 2]);
        let _ = writeln!(s, "{},{:e},{:e},{:e},{:e},{:e},{:e}", k + 1 + offset, e, f[0], f[1], f[2], w[0], w[1]);
    }
    s
}
