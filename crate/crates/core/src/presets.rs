//! Named experiment presets: the convergence tables, the large-time-step
//! stability cases, and the wave-speed studies.
//!
//! A preset is a partial config; `n_cells`, `scheme`, `cfl`, and any model
//! parameter can still be overridden per run. The `table` command expands
//! preset families into their full (N, scheme) matrices.

use crate::config::{RawConfig, RawDomain, RawModel, RawScheme};

pub struct PresetInfo {
    pub name: &'static str,
    pub about: &'static str,
}

const PRESETS: &[PresetInfo] = &[
    PresetInfo {
        name: "fisher-table1",
        about: "Fisher convergence study: rho=1e4 on [-1,5], T=0.02",
    },
    PresetInfo {
        name: "zeldovich-table",
        about: "Zeldovich convergence study: rho=9000 on [-1,5], T=0.06",
    },
    PresetInfo {
        name: "nws-table",
        about: "Newell-Whitehead-Segel convergence study: rho=5000, alpha=2, T=0.028",
    },
    PresetInfo {
        name: "bistable-table",
        about: "bistable convergence study: rho=1e4, beta=0.2 on [-5,1], T=0.05",
    },
    PresetInfo {
        name: "lv-table",
        about: "Lotka-Volterra convergence study: rho=7000 on [-1,5], T=0.1",
    },
    PresetInfo {
        name: "fisher-stability",
        about: "Fisher large-step case: rho=1e4, N=600, T=0.02",
    },
    PresetInfo {
        name: "zeldovich-stability",
        about: "Zeldovich large-step case: rho=1e4, N=600, T=0.06",
    },
    PresetInfo {
        name: "nws-stability",
        about: "NWS large-step case: rho=1e4, alpha=2, N=800, T=0.02",
    },
    PresetInfo {
        name: "bistable-stability",
        about: "bistable large-step case: rho=1e4, beta=0.2, N=600, T=0.02",
    },
    PresetInfo {
        name: "lv-stability",
        about: "Lotka-Volterra large-step case: rho=1e4, N=900, T=0.11",
    },
    PresetInfo {
        name: "nws-speed",
        about: "NWS front-speed study: rho=1e4, CWENO, T=0.02 (alpha, N overridable)",
    },
    PresetInfo {
        name: "nws-cfl",
        about: "NWS optimal-CFL study: rho=1e4, alpha=2, N=300, CWENO, T=0.02",
    },
];

pub fn list() -> &'static [PresetInfo] {
    PRESETS
}

/// The partial config behind a preset name.
pub fn find(name: &str) -> Option<RawConfig> {
    let cfg = match name {
        "fisher-table1" => base("fisher", 1e4, None, None, (-1.0, 5.0), 1200, 0.02),
        "zeldovich-table" => base("zeldovich", 9000.0, None, None, (-1.0, 5.0), 1200, 0.06),
        "nws-table" => base("nws", 5000.0, Some(2.0), None, (-1.0, 5.0), 1200, 0.028),
        "bistable-table" => base("bistable", 1e4, None, Some(0.2), (-5.0, 1.0), 1200, 0.05),
        "lv-table" => base("lotka-volterra", 7000.0, None, None, (-1.0, 5.0), 1500, 0.1),
        "fisher-stability" => base("fisher", 1e4, None, None, (-1.0, 5.0), 600, 0.02),
        "zeldovich-stability" => base("zeldovich", 1e4, None, None, (-1.0, 5.0), 600, 0.06),
        "nws-stability" => base("nws", 1e4, Some(2.0), None, (-1.0, 5.0), 800, 0.02),
        "bistable-stability" => base("bistable", 1e4, None, Some(0.2), (-5.0, 1.0), 600, 0.02),
        "lv-stability" => base("lotka-volterra", 1e4, None, None, (-1.0, 5.0), 900, 0.11),
        "nws-speed" => base("nws", 1e4, Some(2.0), None, (-1.0, 5.0), 1000, 0.02),
        "nws-cfl" => {
            let mut cfg = base("nws", 1e4, Some(2.0), None, (-1.0, 5.0), 300, 0.02);
            cfg.cfl = Some(0.13);
            cfg
        }
        _ => return None,
    };
    Some(cfg)
}

fn base(
    kind: &str,
    rho: f64,
    alpha: Option<f64>,
    beta: Option<f64>,
    domain: (f64, f64),
    n_cells: usize,
    t_final: f64,
) -> RawConfig {
    RawConfig {
        preset: None,
        model: Some(RawModel {
            kind: Some(kind.to_string()),
            d: Some(1.0),
            rho: Some(rho),
            alpha,
            beta,
        }),
        domain: Some(RawDomain {
            a: Some(domain.0),
            b: Some(domain.1),
        }),
        n_cells: Some(n_cells),
        scheme: Some(RawScheme {
            kind: Some("cweno".to_string()),
            epsilon: None,
        }),
        cfl: None,
        t_final: Some(t_final),
        snapshots: None,
        out_dir: None,
        track_front: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_preset_resolves() {
        for info in list() {
            let raw = find(info.name).expect(info.name);
            let mut raw = raw;
            raw.preset = None;
            let cfg = crate::config::resolve(raw).expect(info.name);
            assert!(cfg.t_final > 0.0);
        }
    }

    #[test]
    fn stability_cases_use_the_large_step_grids() {
        let cases = [
            ("fisher-stability", 600usize, 0.02),
            ("zeldovich-stability", 600, 0.06),
            ("nws-stability", 800, 0.02),
            ("bistable-stability", 600, 0.02),
            ("lv-stability", 900, 0.11),
        ];
        for (name, n, t) in cases {
            let raw = find(name).unwrap();
            assert_eq!(raw.n_cells, Some(n), "{name}");
            assert_eq!(raw.t_final, Some(t), "{name}");
            assert_eq!(raw.model.as_ref().unwrap().rho, Some(1e4), "{name}");
        }
    }

    #[test]
    fn unknown_names_return_nothing() {
        assert!(find("not-a-preset").is_none());
    }
}
