//! Experiment execution: single runs, table families, and output artifacts.
//!
//! `execute` runs a config in memory; `run` additionally writes the report
//! CSV, profile snapshots, the front track, and a plot script into the
//! output directory. `run_table` expands a family into its full
//! (N, scheme) matrix and writes one aggregated CSV.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use crate::config::{ConfigError, RunConfig};
use crate::diagnostics::{error_norms, front_speed_trailing, FrontTrack};
use crate::error::SolverError;
use crate::grid::{Grid, StateField};
use crate::integrator::{advance, Observer, Problem, StepStatus, TimeSpec};
use crate::report::{
    emit_csv, fmt_full, fmt_table, RunRecord, RunReport, RunStatus, SpeciesRecord,
};

/// Fraction of elapsed time used by the trailing front-speed estimate.
pub const SPEED_FIT_FRACTION: f64 = 0.25;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Everything a run produces, kept in memory.
#[derive(Debug)]
pub struct RunOutput {
    pub report: RunReport,
    pub grid: Grid,
    /// Last accepted state (the final state for completed runs).
    pub final_state: StateField,
    /// Exact profile at the final time; absent when the run blew up.
    pub exact_final: Option<StateField>,
    /// Profiles captured at the configured snapshot times.
    pub snapshots: Vec<(f64, StateField)>,
    pub front_samples: Vec<(f64, f64)>,
}

struct SnapshotCollector {
    targets: Vec<f64>,
    next: usize,
    collected: Vec<(f64, StateField)>,
}

impl SnapshotCollector {
    fn new(times: &[f64]) -> Self {
        let mut targets = times.to_vec();
        targets.sort_by(|a, b| a.partial_cmp(b).unwrap());
        SnapshotCollector {
            targets,
            next: 0,
            collected: Vec::new(),
        }
    }
}

impl Observer for SnapshotCollector {
    fn observe(&mut self, _step: u64, t: f64, state: &StateField) {
        while self.next < self.targets.len() && t >= self.targets[self.next] - 1e-15 {
            self.collected.push((t, state.clone()));
            self.next += 1;
        }
    }
}

/// Run a config in memory: exact initial data, TVD-RK3 march, error norms
/// against the exact profile at the final time, and front statistics.
pub fn execute(config: &RunConfig) -> Result<RunOutput, RunError> {
    let started = Instant::now();
    let grid = Grid::new(config.a, config.b, config.n_cells)?;
    let model = config.model;
    let problem = Problem::with_model_boundaries(grid, config.scheme, model);
    let initial = model.sample_exact(&grid, 0.0);
    let time = TimeSpec::new(config.cfl, config.t_final)
        .map_err(|message| ConfigError::Invalid {
            path: "cfl/t_final".into(),
            message,
        })?;

    let mut tracker = config
        .track_front
        .then(|| FrontTrack::new(grid, model.front_level(), 0));
    let mut snapshots = SnapshotCollector::new(&config.snapshots);
    let outcome = {
        let mut observers: Vec<&mut dyn Observer> = Vec::new();
        if let Some(t) = tracker.as_mut() {
            observers.push(t);
        }
        observers.push(&mut snapshots);
        advance(&problem, initial, &time, &mut observers)?
    };

    let front_samples = tracker.map(|t| t.samples().to_vec()).unwrap_or_default();
    let species_count = model.species_count();

    let (status, exact_final, mut species_records) = match outcome.status {
        StepStatus::Ok => {
            // The discrete problem holds the endpoints at the equilibrium
            // values, so the reference is pinned the same way; at the
            // experiment scales the difference is below 1e-100.
            let mut exact = model.sample_exact(&grid, config.t_final);
            crate::grid::apply_dirichlet(&mut exact, &problem.bc);
            let norms = error_norms(&outcome.state, &exact)?;
            let records = norms
                .into_iter()
                .map(|n| SpeciesRecord {
                    norms: Some(n),
                    ..SpeciesRecord::default()
                })
                .collect();
            (RunStatus::Ok, Some(exact), records)
        }
        StepStatus::BlowUp { t } => (
            RunStatus::BlowUp { t },
            None,
            vec![SpeciesRecord::default(); species_count],
        ),
    };

    if let Some(&(_, x)) = front_samples.last() {
        species_records[0].front_x = Some(x);
    }
    if front_samples.len() >= 2 {
        species_records[0].front_speed =
            front_speed_trailing(&front_samples, SPEED_FIT_FRACTION).ok();
    }

    let record = RunRecord {
        preset: config.preset.clone(),
        model_kind: model.kind_name().to_string(),
        d: model.d(),
        rho: model.rho(),
        alpha: model.alpha(),
        beta: model.beta(),
        a: config.a,
        b: config.b,
        n_cells: config.n_cells,
        scheme: config.scheme.kind.name().to_string(),
        epsilon: config.scheme.epsilon,
        cfl: config.cfl,
        t_final: config.t_final,
        status,
        steps: outcome.steps,
        species: species_records,
    };

    Ok(RunOutput {
        report: RunReport {
            record,
            duration: started.elapsed(),
        },
        grid,
        final_state: outcome.state,
        exact_final,
        snapshots: snapshots.collected,
        front_samples,
    })
}

/// Run a config and write its artifacts into the output directory
/// (`out` when the config names none).
pub fn run(config: &RunConfig) -> Result<RunReport, RunError> {
    let output = execute(config)?;
    let out_dir = config
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("out"));
    write_artifacts(config, &output, &out_dir)?;
    Ok(output.report)
}

fn write_artifacts(config: &RunConfig, output: &RunOutput, out_dir: &Path) -> Result<(), RunError> {
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("report.csv"), emit_csv(&output.report.record))?;

    let model = config.model;
    let mut written = Vec::new();
    for (t, state) in &output.snapshots {
        let name = format!("snapshot_t{t:.6}.csv");
        let exact = model.sample_exact(&output.grid, *t);
        fs::write(
            out_dir.join(&name),
            profile_csv(&output.grid, state, Some(&exact)),
        )?;
        written.push(name);
    }
    if let Some(exact) = &output.exact_final {
        fs::write(
            out_dir.join("final.csv"),
            profile_csv(&output.grid, &output.final_state, Some(exact)),
        )?;
        written.push("final.csv".to_string());
    }
    if !output.front_samples.is_empty() {
        let mut text = String::from("t,x_front\n");
        for (t, x) in &output.front_samples {
            text.push_str(&format!("{},{}\n", fmt_full(*t), fmt_full(*x)));
        }
        fs::write(out_dir.join("front.csv"), text)?;
        written.push("front.csv".to_string());

        // Rolling speed estimate for the speed-convergence plots.
        let window = (output.front_samples.len() / 20).max(2);
        let series = crate::diagnostics::front_speed_series(&output.front_samples, window);
        if !series.is_empty() {
            let mut text = String::from("t,speed\n");
            for (t, c) in &series {
                text.push_str(&format!("{},{}\n", fmt_full(*t), fmt_full(*c)));
            }
            fs::write(out_dir.join("front_speed.csv"), text)?;
            written.push("front_speed.csv".to_string());
        }
    }
    fs::write(out_dir.join("plot.py"), run_plot_script(&written))?;
    Ok(())
}

/// Profile CSV: `x,u[,v],exact_u[,exact_v]` with 17-significant-digit floats.
fn profile_csv(grid: &Grid, state: &StateField, exact: Option<&StateField>) -> String {
    let species = state.species_count();
    let mut text = String::from("x");
    let names = ["u", "v"];
    for s in 0..species {
        text.push(',');
        text.push_str(names[s]);
    }
    if exact.is_some() {
        for s in 0..species {
            text.push_str(",exact_");
            text.push_str(names[s]);
        }
    }
    text.push('\n');
    for i in 0..grid.points() {
        text.push_str(&fmt_full(grid.x(i)));
        for s in 0..species {
            text.push(',');
            text.push_str(&fmt_full(state.species(s)[i]));
        }
        if let Some(exact) = exact {
            for s in 0..species {
                text.push(',');
                text.push_str(&fmt_full(exact.species(s)[i]));
            }
        }
        text.push('\n');
    }
    text
}

fn run_plot_script(files: &[String]) -> String {
    let mut script = String::from(
        "#!/usr/bin/env python3\n\
         \"\"\"Plot the CSV artifacts written next to this script.\"\"\"\n\
         import csv\n\
         import pathlib\n\n\
         import matplotlib.pyplot as plt\n\n\
         HERE = pathlib.Path(__file__).parent\n\n\
         def read(name):\n\
         \x20   with open(HERE / name, newline=\"\") as f:\n\
         \x20       rows = list(csv.DictReader(f))\n\
         \x20   return {k: [float(r[k]) for r in rows] for k in rows[0]}\n\n",
    );
    script.push_str("FILES = [\n");
    for f in files {
        script.push_str(&format!("    \"{f}\",\n"));
    }
    script.push_str("]\n\n");
    script.push_str(
        "for name in FILES:\n\
         \x20   data = read(name)\n\
         \x20   plt.figure()\n\
         \x20   if \"t\" in data:\n\
         \x20       key = \"x_front\" if \"x_front\" in data else \"speed\"\n\
         \x20       plt.plot(data[\"t\"], data[key])\n\
         \x20       plt.xlabel(\"t\"); plt.ylabel(key)\n\
         \x20   else:\n\
         \x20       for key in data:\n\
         \x20           if key == \"x\":\n\
         \x20               continue\n\
         \x20           style = \"--\" if key.startswith(\"exact\") else \"-\"\n\
         \x20           plt.plot(data[\"x\"], data[key], style, label=key)\n\
         \x20       plt.xlabel(\"x\"); plt.legend()\n\
         \x20   plt.title(name)\n\n\
         plt.show()\n",
    );
    script
}

/// The experiment families the `table` command can expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFamily {
    Fisher,
    Zeldovich,
    Nws,
    Bistable,
    LotkaVolterra,
    Stability,
    NwsSpeed,
    NwsCfl,
}

impl TableFamily {
    pub const ALL: [TableFamily; 8] = [
        TableFamily::Fisher,
        TableFamily::Zeldovich,
        TableFamily::Nws,
        TableFamily::Bistable,
        TableFamily::LotkaVolterra,
        TableFamily::Stability,
        TableFamily::NwsSpeed,
        TableFamily::NwsCfl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableFamily::Fisher => "fisher",
            TableFamily::Zeldovich => "zeldovich",
            TableFamily::Nws => "nws",
            TableFamily::Bistable => "bistable",
            TableFamily::LotkaVolterra => "lotka-volterra",
            TableFamily::Stability => "stability",
            TableFamily::NwsSpeed => "nws-speed",
            TableFamily::NwsCfl => "nws-cfl",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

const SCHEME_NAMES: [&str; 4] = ["fd6", "weno-lsz", "mweno", "cweno"];
const TABLE_CELLS: [usize; 4] = [1200, 2400, 4800, 9600];
const LV_CELLS: [usize; 3] = [1500, 3000, 6000];

fn preset_config(preset: &str, adjust: impl FnOnce(&mut crate::config::RawConfig)) -> RunConfig {
    let mut raw = crate::presets::find(preset).expect("preset exists");
    raw.preset = Some(preset.to_string());
    adjust(&mut raw);
    // Presets are validated by construction.
    crate::config::resolve(raw).expect("preset config is valid")
}

/// The full run matrix behind a table family, in output order.
pub fn table_configs(family: TableFamily) -> Vec<RunConfig> {
    let mut configs = Vec::new();
    let convergence = |preset: &'static str, cells: &[usize], configs: &mut Vec<RunConfig>| {
        for &scheme in &SCHEME_NAMES {
            for &n in cells {
                configs.push(preset_config(preset, |raw| {
                    raw.scheme.as_mut().unwrap().kind = Some(scheme.to_string());
                    raw.n_cells = Some(n);
                    raw.track_front = Some(false);
                }));
            }
        }
    };
    match family {
        TableFamily::Fisher => convergence("fisher-table1", &TABLE_CELLS, &mut configs),
        TableFamily::Zeldovich => convergence("zeldovich-table", &TABLE_CELLS, &mut configs),
        TableFamily::Nws => convergence("nws-table", &TABLE_CELLS, &mut configs),
        TableFamily::Bistable => convergence("bistable-table", &TABLE_CELLS, &mut configs),
        TableFamily::LotkaVolterra => convergence("lv-table", &LV_CELLS, &mut configs),
        TableFamily::Stability => {
            for preset in [
                "fisher-stability",
                "zeldovich-stability",
                "nws-stability",
                "bistable-stability",
                "lv-stability",
            ] {
                for &scheme in &SCHEME_NAMES {
                    configs.push(preset_config(preset, |raw| {
                        raw.scheme.as_mut().unwrap().kind = Some(scheme.to_string());
                    }));
                }
            }
        }
        TableFamily::NwsSpeed => {
            let cells: [(f64, [usize; 3]); 4] = [
                (1.0, [500, 1000, 2000]),
                (2.0, [1000, 5000, 10000]),
                (3.0, [1200, 6000, 12000]),
                (4.0, [1200, 6000, 12000]),
            ];
            for (alpha, ns) in cells {
                for n in ns {
                    configs.push(preset_config("nws-speed", |raw| {
                        raw.model.as_mut().unwrap().alpha = Some(alpha);
                        raw.n_cells = Some(n);
                    }));
                }
            }
        }
        TableFamily::NwsCfl => {
            let rows: [(f64, usize, [f64; 3]); 3] = [
                (2.0, 300, [0.18, 0.13, 0.08]),
                (3.0, 240, [0.1, 0.076, 0.02]),
                (4.0, 200, [0.06, 0.043, 0.01]),
            ];
            for (alpha, n, cfls) in rows {
                for cfl in cfls {
                    configs.push(preset_config("nws-cfl", |raw| {
                        raw.model.as_mut().unwrap().alpha = Some(alpha);
                        raw.n_cells = Some(n);
                        raw.cfl = Some(cfl);
                    }));
                }
            }
        }
    }
    configs
}

pub const TABLE_HEADER: &str =
    "family,model,scheme,alpha,cfl,n_cells,species,l1,l2,linf,order_l1,status,blowup_t,front_speed";

/// Execute a family's runs (optionally capped in grid size) and write
/// `<family>.csv` plus a plot script; returns the CSV path.
pub fn run_table(
    family: TableFamily,
    out_dir: &Path,
    max_cells: Option<usize>,
) -> Result<PathBuf, RunError> {
    let configs: Vec<RunConfig> = table_configs(family)
        .into_iter()
        .filter(|c| max_cells.map_or(true, |m| c.n_cells <= m))
        .collect();

    let mut rows: Vec<TableRow> = Vec::new();
    for config in &configs {
        let output = execute(config)?;
        let record = &output.report.record;
        for (s, sp) in record.species.iter().enumerate() {
            rows.push(TableRow {
                family: family.name(),
                model: record.model_kind.clone(),
                scheme: record.scheme.clone(),
                alpha: record.alpha,
                cfl: record.cfl,
                n_cells: record.n_cells,
                species: s,
                norms: sp.norms,
                order_l1: None,
                status: record.status,
                front_speed: sp.front_speed,
            });
        }
    }

    // Observed L1 order between consecutive grids of the same column.
    for i in 0..rows.len() {
        let (head, tail) = rows.split_at_mut(i);
        let row = &mut tail[0];
        let prev = head.iter().rev().find(|p| {
            p.model == row.model
                && p.scheme == row.scheme
                && p.alpha == row.alpha
                && p.cfl == row.cfl
                && p.species == row.species
                && p.n_cells < row.n_cells
        });
        if let (Some(prev), Some(n)) = (prev, row.norms) {
            if let Some(pn) = prev.norms {
                if pn.l1 > 0.0 && n.l1 > 0.0 {
                    row.order_l1 = Some(
                        (pn.l1 / n.l1).ln() / (row.n_cells as f64 / prev.n_cells as f64).ln(),
                    );
                }
            }
        }
    }

    fs::create_dir_all(out_dir)?;
    let mut text = String::from(TABLE_HEADER);
    text.push('\n');
    for row in &rows {
        text.push_str(&row.to_csv());
        text.push('\n');
    }
    let path = out_dir.join(format!("{}.csv", family.name()));
    fs::write(&path, text)?;
    fs::write(
        out_dir.join(format!("plot_{}.py", family.name())),
        table_plot_script(family.name()),
    )?;
    Ok(path)
}

struct TableRow {
    family: &'static str,
    model: String,
    scheme: String,
    alpha: Option<f64>,
    cfl: f64,
    n_cells: usize,
    species: usize,
    norms: Option<crate::diagnostics::ErrorNorms>,
    order_l1: Option<f64>,
    status: RunStatus,
    front_speed: Option<f64>,
}

impl TableRow {
    fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(fmt_table).unwrap_or_default();
        [
            self.family.to_string(),
            self.model.clone(),
            self.scheme.clone(),
            self.alpha.map(|a| format!("{a}")).unwrap_or_default(),
            format!("{}", self.cfl),
            self.n_cells.to_string(),
            self.species.to_string(),
            opt(self.norms.map(|n| n.l1)),
            opt(self.norms.map(|n| n.l2)),
            opt(self.norms.map(|n| n.linf)),
            self.order_l1.map(|o| format!("{o:.2}")).unwrap_or_default(),
            self.status.label().to_string(),
            opt(self.status.blowup_time()),
            opt(self.front_speed),
        ]
        .join(",")
    }
}

fn table_plot_script(family: &str) -> String {
    format!(
        "#!/usr/bin/env python3\n\
         \"\"\"Log-log error-vs-N plot for the {family} family CSV.\"\"\"\n\
         import csv\n\
         import pathlib\n\n\
         import matplotlib.pyplot as plt\n\n\
         HERE = pathlib.Path(__file__).parent\n\
         with open(HERE / \"{family}.csv\", newline=\"\") as f:\n\
         \x20   rows = [r for r in csv.DictReader(f) if r[\"l1\"]]\n\n\
         plt.figure()\n\
         for scheme in sorted({{r[\"scheme\"] for r in rows}}):\n\
         \x20   pts = [(int(r[\"n_cells\"]), float(r[\"l1\"])) for r in rows\n\
         \x20          if r[\"scheme\"] == scheme and r[\"species\"] == \"0\"]\n\
         \x20   pts.sort()\n\
         \x20   if pts:\n\
         \x20       plt.loglog([p[0] for p in pts], [p[1] for p in pts], \"o-\", label=scheme)\n\
         plt.xlabel(\"N\"); plt.ylabel(\"L1 error\"); plt.legend(); plt.title(\"{family}\")\n\
         plt.show()\n"
    )
}
