use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use phic_core::boolnet::{NetworkSpec, NetworkState};
use phic_core::complexity::{etc, io as seqio, lz, shannon_entropy};
use phic_core::hr_neuron::{run_neuron, HrParams, HrState, NeuronConfig};
use phic_core::phic::{describe, hierarchy_report, phi_c_state, ExperimentConfig, StatePhiC};
use phic_core::reference::{self, Comparison, ReferenceTable};
use phic_core::regression::{fit_entropy_model, predict, EntropyDesignRow};
use phic_core::report::{hierarchy_records, write_csv, HierarchyRecord, NA};
use serde::Serialize;

use crate::args::{
    Cli, Command, Experiment, Format, MeasureArgs, NeuronArgs, Output, PhicArgs, RegressArgs,
    SequenceMeasure, SweepArgs,
};
use crate::error::{CliError, CliResult};

const BUNDLED_PREFIX: &str = "bundled:";

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Measure(a) => emit(&a.output, &measure(&a)?),
        Command::Phic(a) => emit(&a.output, &phic(&a)?),
        Command::Sweep(a) => {
            let outcome = sweep(&a)?;
            emit(&a.output, &outcome.report)?;
            match outcome.failure {
                Some(msg) => Err(CliError::Acceptance(msg)),
                None => Ok(()),
            }
        }
        Command::Regress(a) => emit(&a.output, &regress(&a)?),
        Command::Neuron(a) => emit(&a.output, &neuron(&a)?),
    }
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| file_error(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn file_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::File {
        path: path.display().to_string(),
        source,
    }
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| file_error(path, e))
}

/// Serializes flat records as CSV (with header) or pretty JSON.
fn render<T: Serialize>(rows: &[T], format: Format) -> CliResult<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| CliError::Usage(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

fn na(v: Option<f64>) -> String {
    v.map_or_else(|| NA.to_string(), |x| x.to_string())
}

fn config(e: &Experiment) -> CliResult<ExperimentConfig> {
    if e.len < 2 {
        return Err(CliError::Usage(format!(
            "--len must be at least 2, got {}",
            e.len
        )));
    }
    if e.trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    Ok(ExperimentConfig::new(e.measure.into(), e.seed)
        .with_len(e.len)
        .with_trials(e.trials))
}

#[derive(Debug, Serialize)]
pub struct MeasureRecord {
    pub measure: &'static str,
    pub length: usize,
    pub alphabet: u32,
    pub raw: f64,
    pub normalized: f64,
}

/// Raw count and normalized value of one sequence file. For entropy the raw
/// value is bits per symbol and the normalized value divides by
/// `log2(alphabet)`.
pub fn measure(args: &MeasureArgs) -> CliResult<String> {
    let seq = seqio::read_sequence(open(&args.file)?, args.alphabet)?;
    let (name, raw, normalized) = match args.measure {
        SequenceMeasure::Etc => {
            let r = etc(&seq);
            ("etc", r.iterations as f64, r.normalized)
        }
        SequenceMeasure::Lz => {
            let r = lz(&seq)?;
            ("lz", r.component_count as f64, r.normalized)
        }
        SequenceMeasure::Entropy => {
            let h = shannon_entropy(&seq)?;
            ("entropy", h, h / f64::from(seq.alphabet()).log2())
        }
    };
    let record = MeasureRecord {
        measure: name,
        length: seq.len(),
        alphabet: seq.alphabet(),
        raw,
        normalized,
    };
    render(&[record], args.output.format)
}

/// One line of the `phic` report. The summary line has `state = "mean"`.
#[derive(Debug, Clone, Serialize)]
pub struct PhicRecord {
    pub network: String,
    pub state: String,
    pub measure: String,
    pub len: usize,
    pub trials: usize,
    pub seed: u64,
    pub phi_c: f64,
    /// Most frequent argmax over trials, lowest node on ties.
    pub argmax_node: Option<usize>,
    /// Per-node aggregates averaged over trials, `;` separated.
    pub aggregates: Option<String>,
    pub std: Option<f64>,
    pub cov: Option<f64>,
}

fn state_record(spec: &NetworkSpec, cfg: &ExperimentConfig, s: &StatePhiC) -> PhicRecord {
    let n = spec.len();
    let mut votes = vec![0usize; n];
    let mut sums = vec![0.0; n];
    for t in &s.trials {
        votes[t.argmax_node] += 1;
        for (acc, v) in sums.iter_mut().zip(&t.per_node_aggregate) {
            *acc += v;
        }
    }
    let mut argmax = 0;
    for (i, &v) in votes.iter().enumerate() {
        if v > votes[argmax] {
            argmax = i;
        }
    }
    let aggregates = sums
        .iter()
        .map(|v| (v / s.trials.len() as f64).to_string())
        .collect::<Vec<_>>()
        .join(";");
    PhicRecord {
        network: spec.label(),
        state: s.state.to_string(),
        measure: cfg.kind.name().into(),
        len: cfg.len,
        trials: cfg.trials,
        seed: cfg.seed,
        phi_c: s.phi_c,
        argmax_node: Some(argmax),
        aggregates: Some(aggregates),
        std: None,
        cov: None,
    }
}

/// Per-state phi-c records, followed by a summary record for `all`.
pub fn phic_records(args: &PhicArgs) -> CliResult<Vec<PhicRecord>> {
    let spec: NetworkSpec = args.network.parse()?;
    let cfg = config(&args.experiment)?;
    let states: Vec<NetworkState> = if args.state.eq_ignore_ascii_case("all") {
        (0..spec.state_count())
            .map(|i| NetworkState::from_index(i, spec.len()))
            .collect()
    } else {
        let s: NetworkState = args.state.parse()?;
        if s.len() != spec.len() {
            return Err(CliError::Usage(format!(
                "state {s} has {} bits but {spec} has {} nodes",
                s.len(),
                spec.len()
            )));
        }
        vec![s]
    };
    let mut records = states
        .iter()
        .map(|s| Ok(state_record(&spec, &cfg, &phi_c_state(&spec, s, &cfg)?)))
        .collect::<CliResult<Vec<_>>>()?;
    if states.len() > 1 {
        let values: Vec<f64> = records.iter().map(|r| r.phi_c).collect();
        let (mean, std, cov) = describe(&values);
        records.push(PhicRecord {
            state: "mean".into(),
            phi_c: mean,
            argmax_node: None,
            aggregates: None,
            std: Some(std),
            cov,
            ..records[0].clone()
        });
    }
    Ok(records)
}

pub fn phic(args: &PhicArgs) -> CliResult<String> {
    let records = phic_records(args)?;
    match args.output.format {
        Format::Json => render(&records, Format::Json),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                network: &'a str,
                state: &'a str,
                measure: &'a str,
                len: usize,
                trials: usize,
                seed: u64,
                phi_c: f64,
                argmax_node: String,
                aggregates: &'a str,
                std: String,
                cov: String,
            }
            let rows: Vec<Row> = records
                .iter()
                .map(|r| Row {
                    network: &r.network,
                    state: &r.state,
                    measure: &r.measure,
                    len: r.len,
                    trials: r.trials,
                    seed: r.seed,
                    phi_c: r.phi_c,
                    argmax_node: r.argmax_node.map_or_else(|| NA.into(), |a| a.to_string()),
                    aggregates: r.aggregates.as_deref().unwrap_or(NA),
                    std: na(r.std),
                    cov: if r.state == "mean" {
                        na(r.cov)
                    } else {
                        NA.into()
                    },
                })
                .collect();
            render(&rows, Format::Csv)
        }
    }
}

/// Loads a reference table from a path or a `bundled:<name>` source.
pub fn load_table(source: &str) -> CliResult<ReferenceTable> {
    match source.strip_prefix(BUNDLED_PREFIX) {
        Some(name) => Ok(reference::bundled(name)?),
        None => {
            let path = Path::new(source);
            Ok(reference::read_table(source, open(path)?)?)
        }
    }
}

#[derive(Debug)]
pub struct SweepOutcome {
    pub records: Vec<HierarchyRecord>,
    pub comparison: Option<Comparison>,
    pub report: String,
    /// Set when the rank correlation is below the threshold.
    pub failure: Option<String>,
}

pub fn sweep(args: &SweepArgs) -> CliResult<SweepOutcome> {
    let cfg = config(&args.experiment)?;
    let table = match (&args.reference, args.no_reference) {
        (_, true) => None,
        (Some(src), false) => Some(load_table(src)?),
        (None, false) => reference::for_measure(cfg.kind, args.nodes),
    };
    let rows = hierarchy_report(args.nodes, &cfg)?;
    let comparison = table.as_ref().map(|t| reference::compare(&rows, t));
    let records = hierarchy_records(&rows, &cfg, comparison.as_ref());
    let report = match args.output.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&mut buf, &records)?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
        Format::Json => render(&records, Format::Json)?,
    };
    let failure = comparison.as_ref().and_then(|c| match c.spearman {
        Some(rho) if rho >= args.min_spearman => None,
        Some(rho) => Some(format!(
            "Spearman {rho:.4} against {} is below {}",
            c.reference, args.min_spearman
        )),
        None => Some(format!(
            "no rank correlation could be computed against {}",
            c.reference
        )),
    });
    Ok(SweepOutcome {
        records,
        comparison,
        report,
        failure,
    })
}

#[derive(Debug, Serialize)]
pub struct RegressRecord {
    pub network: String,
    pub y: f64,
    pub n_high: usize,
    pub n_low: usize,
    pub y_hat: f64,
    pub x_high: f64,
    pub x_low: f64,
}

pub fn regress_records(input: &str) -> CliResult<Vec<RegressRecord>> {
    let table = load_table(input)?;
    let rows: Vec<EntropyDesignRow> = table
        .rows
        .iter()
        .map(|r| EntropyDesignRow::from_network(&r.network, r.mean))
        .collect();
    let fit = fit_entropy_model(&rows)?;
    Ok(table
        .rows
        .iter()
        .zip(&rows)
        .map(|(t, row)| RegressRecord {
            network: t.network.label(),
            y: row.y,
            n_high: row.n_high,
            n_low: row.n_low,
            y_hat: predict(row, &fit),
            x_high: fit.x_high,
            x_low: fit.x_low,
        })
        .collect())
}

/// Coefficients are repeated on every row so the CSV stays rectangular.
pub fn regress(args: &RegressArgs) -> CliResult<String> {
    render(&regress_records(&args.input)?, args.output.format)
}

#[derive(Debug, Serialize)]
pub struct NeuronRecord {
    pub current: f64,
    pub r: f64,
    pub dt: f64,
    pub duration: f64,
    pub transient: f64,
    pub window: f64,
    pub threshold: f64,
    pub samples: usize,
    pub spikes: usize,
    pub entropy: f64,
    pub etc_iterations: usize,
    pub etc: f64,
    pub lz_components: usize,
    pub lz: f64,
}

fn parse_init(text: &str) -> CliResult<HrState> {
    let parts = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("--init {text:?}: {e}")))?;
    match parts[..] {
        [s, p, q] => Ok(HrState { s, p, q }),
        _ => Err(CliError::Usage(format!(
            "--init expects S,P,Q, got {text:?}"
        ))),
    }
}

pub fn neuron_record(args: &NeuronArgs) -> CliResult<NeuronRecord> {
    let params = HrParams::new(args.current, args.r)?;
    let cfg = NeuronConfig {
        dt: args.dt,
        duration: args.duration,
        transient: args.transient,
        window: args.window,
        threshold: args.threshold,
        init: parse_init(&args.init)?,
    };
    let run = run_neuron(&params, &cfg)?;
    if let Some(path) = &args.trace_out {
        let mut f = File::create(path).map_err(|e| file_error(path, e))?;
        seqio::write_samples(&mut f, &run.trace)?;
        f.flush().map_err(|e| file_error(path, e))?;
    }
    if let Some(path) = &args.spikes_out {
        let mut f = File::create(path).map_err(|e| file_error(path, e))?;
        seqio::write_sequence(&mut f, &run.spikes)?;
        f.flush().map_err(|e| file_error(path, e))?;
    }
    let e = etc(&run.spikes);
    let l = lz(&run.spikes)?;
    Ok(NeuronRecord {
        current: args.current,
        r: args.r,
        dt: args.dt,
        duration: args.duration,
        transient: args.transient,
        window: args.window,
        threshold: args.threshold,
        samples: run.trace.len(),
        spikes: run.spikes.len(),
        entropy: shannon_entropy(&run.spikes)?,
        etc_iterations: e.iterations,
        etc: e.normalized,
        lz_components: l.component_count,
        lz: l.normalized,
    })
}

pub fn neuron(args: &NeuronArgs) -> CliResult<String> {
    render(&[neuron_record(args)?], args.output.format)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phic_args(network: &str, state: &str) -> PhicArgs {
        PhicArgs {
            network: network.into(),
            state: state.into(),
            experiment: Experiment {
                measure: crate::args::Measure::Etc,
                len: 200,
                seed: 4,
                trials: 2,
            },
            output: Output {
                out: None,
                format: Format::Csv,
            },
        }
    }

    #[test]
    fn init_parsing() {
        let x = parse_init("-1.5, -10,3.2").unwrap();
        assert_eq!((x.s, x.p, x.q), (-1.5, -10.0, 3.2));
        assert!(parse_init("1,2").is_err());
        assert!(parse_init("1,a,2").is_err());
    }

    #[test]
    fn single_state_record() {
        let rows = phic_records(&phic_args("OR-AND-XOR", "100")).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].state, "100");
        assert!(rows[0].argmax_node.is_some());
        assert_eq!(
            rows[0].aggregates.as_deref().map(|a| a.split(';').count()),
            Some(3)
        );
    }

    #[test]
    fn state_width_must_match() {
        assert!(phic_records(&phic_args("OR-AND-XOR", "10")).is_err());
    }

    #[test]
    fn bundled_tables_load() {
        for name in reference::bundled_names() {
            assert!(!load_table(&format!("bundled:{name}"))
                .unwrap()
                .rows
                .is_empty());
        }
        assert!(load_table("bundled:nope").is_err());
    }

    #[test]
    fn json_rendering_is_an_array() {
        let text = render(
            &[MeasureRecord {
                measure: "etc",
                length: 8,
                alphabet: 2,
                raw: 5.0,
                normalized: 5.0 / 7.0,
            }],
            Format::Json,
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["raw"], 5.0);
    }
}
