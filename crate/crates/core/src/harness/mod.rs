//! Instance-level verification pipeline over a corpus of embedding schemes
//! and covering maps, producing reproducible reports.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bounds::{nonorientable_upper_bound, orientable_upper_bound, NonorientableMethod, OrientableMethod};
use crate::covering::{check_weak_cover, double_cover, CoveringMap};
use crate::embedding::{
    add_crosscap, count_faces, euler_genus, is_orientable_scheme, validate_scheme, EmbeddingError, EmbeddingScheme,
    Violation,
};
use crate::error::{Error, Result};
use crate::game::{analyze_winning, transfer_strategy, DEFAULT_MAX_NODES};
use crate::graph::{write_graph6, Graph};
use crate::solver::{cop_number, extract_strategies, SolveError};

mod corpus;

pub use corpus::{load_graph_corpus, run_corpus, CorpusCommand, CorpusItem, CorpusRecord, CorpusReport};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: String) -> Check {
    Check { name: name.to_string(), pass, detail }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferRecord {
    pub k: usize,
    pub winning: bool,
    pub positions: usize,
    pub longest_capture: Option<usize>,
    /// Largest rank the robber can force on the cover, in plies.
    pub rank_bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusRecord {
    pub euler_genus: usize,
    pub orientable: bool,
    pub faces: usize,
    pub cover_euler_genus: usize,
    pub cover_faces: usize,
    pub cover_connected: bool,
    pub crosscap_euler_genus: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub id: String,
    pub input_hash: String,
    pub graph6: String,
    pub embedding_id: Option<String>,
    pub base_cop_number: Option<usize>,
    pub cover_cop_number: Option<usize>,
    pub transfer: Option<TransferRecord>,
    pub genus: Option<GenusRecord>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub passes: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub records: Vec<InstanceRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    fn from_records(mut records: Vec<InstanceRecord>) -> Self {
        records.sort_by(|a, b| (&a.input_hash, &a.id).cmp(&(&b.input_hash, &b.id)));
        let passes = records.iter().filter(|r| r.pass).count();
        VerificationReport {
            tool_version: TOOL_VERSION.to_string(),
            summary: Summary { instances: records.len(), passes, failures: records.len() - passes },
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failures == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("id,input_hash,graph6,base_cop_number,cover_cop_number,euler_genus,cover_euler_genus,pass\n");
        for r in &self.records {
            let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.id,
                r.input_hash,
                r.graph6,
                opt(r.base_cop_number),
                opt(r.cover_cop_number),
                opt(r.genus.as_ref().map(|g| g.euler_genus)),
                opt(r.genus.as_ref().map(|g| g.cover_euler_genus)),
                r.pass
            ));
        }
        out
    }
}

/// Cop number summed over components: the robber picks a component after
/// seeing the placement, so the cops must cover every component.
pub fn cop_number_by_components(g: &Graph) -> std::result::Result<usize, SolveError> {
    g.components().iter().map(|c| cop_number(&g.induced_subgraph(c)).map(|(k, _)| k)).sum()
}

fn list_files(dir: &Path, ext: &str) -> Result<Vec<PathBuf>> {
    let io = |e| Error::Io { path: dir.display().to_string(), source: e };
    let mut out: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    out.sort();
    Ok(out)
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Io { path: path.display().to_string(), source: e })
}

pub fn load_scheme(path: &Path) -> Result<EmbeddingScheme> {
    let bytes = read(path)?;
    serde_json::from_slice(&bytes).map_err(|e| Error::Json { path: path.display().to_string(), source: e })
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Runs the pipeline on one embedding scheme.
///
/// Non-orientable schemes: double cover, both cop numbers, `c(base) <=
/// c(cover)`, transfer of the cover strategy with exhaustive verification
/// on the base, and the genus arithmetic of the cover. Orientable schemes:
/// crosscap addition with `eg <= 2γ + 1`, and monotonicity over the
/// (disconnected) double cover.
pub fn verify_scheme(id: &str, input_hash: &str, s: &EmbeddingScheme) -> InstanceRecord {
    let mut rec = InstanceRecord {
        id: id.to_string(),
        input_hash: input_hash.to_string(),
        graph6: String::new(),
        embedding_id: Some(id.to_string()),
        base_cop_number: None,
        cover_cop_number: None,
        transfer: None,
        genus: None,
        checks: Vec::new(),
        pass: false,
        error: None,
    };
    if let Err(e) = verify_scheme_into(s, &mut rec) {
        rec.error = Some(e.to_string());
    }
    rec.pass = rec.error.is_none() && rec.checks.iter().all(|c| c.pass);
    rec
}

fn verify_scheme_into(s: &EmbeddingScheme, rec: &mut InstanceRecord) -> Result<()> {
    validate_scheme(s).map_err(EmbeddingError::Invalid)?;
    let base = s.graph();
    rec.graph6 = write_graph6(&base)?;
    let eg = euler_genus(s);
    let orientable = is_orientable_scheme(s);
    let faces = count_faces(s);

    let (cover, map) = double_cover(s);
    // the two sheets of an orientable scheme's cover are separate surfaces
    let broken: Vec<Violation> = validate_scheme(&cover)
        .err()
        .unwrap_or_default()
        .into_iter()
        .filter(|v| *v != Violation::NotConnected)
        .collect();
    if !broken.is_empty() {
        return Err(EmbeddingError::Invalid(broken).into());
    }
    let cover_graph = cover.graph();
    let cover_connected = cover_graph.is_connected();
    let cover_faces = count_faces(&cover);
    // summed over components: 2c - χ
    let cover_eg = (2 * cover_graph.components().len() as i64 - cover.euler_characteristic()) as usize;

    rec.checks.push(check(
        "cover_is_weak_cover",
        check_weak_cover(&map.p, &map.source, &map.target).is_ok_and(|c| c.two_sheeted),
        "double cover passes the two-sheeted weak-cover check".into(),
    ));
    rec.checks.push(check("cover_orientable", is_orientable_scheme(&cover), String::new()));
    rec.checks.push(check(
        "cover_connected_iff_nonorientable",
        cover_connected != orientable,
        format!("orientable={orientable}, cover connected={cover_connected}"),
    ));
    rec.checks.push(check(
        "faces_double",
        cover_faces == 2 * faces,
        format!("F(base)={faces}, F(cover)={cover_faces}"),
    ));

    let base_c = cop_number(&base)?.0;
    rec.base_cop_number = Some(base_c);

    let mut crosscap_eg = None;
    if orientable {
        let cover_c = cop_number_by_components(&cover_graph)?;
        rec.cover_cop_number = Some(cover_c);
        rec.checks.push(check("cop_monotone", base_c <= cover_c, format!("{base_c} <= {cover_c}")));
        let gamma = eg / 2;
        rec.checks.push(check(
            "orientable_bound",
            base_c as u64 <= orientable_upper_bound(gamma as u64, OrientableMethod::Schroder),
            format!("c = {base_c} on orientable genus {gamma}"),
        ));
        if base.size() >= base.order() {
            let out = add_crosscap(s)?;
            let after = euler_genus(&out);
            crosscap_eg = Some(after);
            rec.checks.push(check(
                "crosscap_bound",
                !is_orientable_scheme(&out) && after <= 2 * gamma + 1,
                format!("non-orientable Euler genus {after} <= 2*{gamma}+1"),
            ));
        }
    } else {
        let (cover_c, cover_res) = cop_number(&cover_graph)?;
        rec.cover_cop_number = Some(cover_c);
        rec.checks.push(check("cop_monotone", base_c <= cover_c, format!("{base_c} <= {cover_c}")));
        rec.checks.push(check(
            "cover_genus",
            cover_eg + 2 == 2 * eg,
            format!("base Euler genus {eg}, cover orientable genus {}", cover_eg / 2),
        ));
        rec.checks.push(check(
            "nonorientable_bound",
            nonorientable_upper_bound(eg as u64, NonorientableMethod::DoubleCover).is_some_and(|b| base_c as u64 <= b),
            format!("c = {base_c} on non-orientable genus {eg}"),
        ));
        let (strategy, _) = extract_strategies(&cover_res)?;
        let rank_bound = cover_res.placement_value(&strategy.placement).unwrap_or(0);
        let player = transfer_strategy(&map, &strategy)?;
        let analysis = analyze_winning(&base, &player, cover_c, DEFAULT_MAX_NODES);
        rec.checks.push(check(
            "transfer_wins",
            analysis.winning && analysis.longest_capture.is_some_and(|l| l <= rank_bound as usize),
            analysis.failure.clone().unwrap_or_else(|| {
                format!("capture within {:?} cop moves, rank bound {rank_bound}", analysis.longest_capture)
            }),
        ));
        rec.transfer = Some(TransferRecord {
            k: cover_c,
            winning: analysis.winning,
            positions: analysis.nodes,
            longest_capture: analysis.longest_capture,
            rank_bound,
        });
    }
    rec.genus = Some(GenusRecord {
        euler_genus: eg,
        orientable,
        faces,
        cover_euler_genus: cover_eg,
        cover_faces,
        cover_connected,
        crosscap_euler_genus: crosscap_eg,
    });
    Ok(())
}

/// Checks a covering-map file: the weak-cover certificate and
/// `c(target) <= c(source)`.
pub fn verify_cover(id: &str, input_hash: &str, map: &CoveringMap) -> InstanceRecord {
    let mut rec = InstanceRecord {
        id: id.to_string(),
        input_hash: input_hash.to_string(),
        graph6: write_graph6(&map.target).unwrap_or_default(),
        embedding_id: None,
        base_cop_number: None,
        cover_cop_number: None,
        transfer: None,
        genus: None,
        checks: Vec::new(),
        pass: false,
        error: None,
    };
    match check_weak_cover(&map.p, &map.source, &map.target) {
        Ok(_) => rec.checks.push(check("weak_cover", true, String::new())),
        Err(v) => rec.checks.push(check("weak_cover", false, v.to_string())),
    }
    match (cop_number_by_components(&map.target), cop_number_by_components(&map.source)) {
        (Ok(a), Ok(b)) => {
            rec.base_cop_number = Some(a);
            rec.cover_cop_number = Some(b);
            rec.checks.push(check("cop_monotone", a <= b, format!("{a} <= {b}")));
        }
        (Err(e), _) | (_, Err(e)) => rec.error = Some(e.to_string()),
    }
    rec.pass = rec.error.is_none() && rec.checks.iter().all(|c| c.pass);
    rec
}

/// Verifies every `*.json` scheme in `dir`.
pub fn verify_theorem(dir: &Path) -> Result<VerificationReport> {
    verify_corpus(dir, None, 0)
}

/// Verifies the schemes in `embeddings` and, if given, the covering maps in
/// `covers`, using `workers` threads (0 = rayon default). The report is
/// independent of `workers`.
pub fn verify_corpus(embeddings: &Path, covers: Option<&Path>, workers: usize) -> Result<VerificationReport> {
    let mut jobs: Vec<(PathBuf, bool)> = list_files(embeddings, "json")?.into_iter().map(|p| (p, true)).collect();
    if let Some(c) = covers {
        jobs.extend(list_files(c, "json")?.into_iter().map(|p| (p, false)));
    }
    let run = |(path, is_scheme): &(PathBuf, bool)| -> InstanceRecord {
        let id = stem(path);
        let bytes = match read(path) {
            Ok(b) => b,
            Err(e) => return failed(&id, "", e.to_string()),
        };
        let hash = sha256_hex(&bytes);
        let text = String::from_utf8_lossy(&bytes);
        if *is_scheme {
            match serde_json::from_str::<EmbeddingScheme>(&text) {
                Ok(s) => verify_scheme(&id, &hash, &s),
                Err(e) => failed(&id, &hash, e.to_string()),
            }
        } else {
            match CoveringMap::from_json(&text) {
                Ok(m) => verify_cover(&id, &hash, &m),
                Err(e) => failed(&id, &hash, e.to_string()),
            }
        }
    };
    let records = with_pool(workers, || jobs.par_iter().map(run).collect::<Vec<_>>());
    Ok(VerificationReport::from_records(records))
}

fn failed(id: &str, hash: &str, error: String) -> InstanceRecord {
    InstanceRecord {
        id: id.to_string(),
        input_hash: hash.to_string(),
        graph6: String::new(),
        embedding_id: None,
        base_cop_number: None,
        cover_cop_number: None,
        transfer: None,
        genus: None,
        checks: Vec::new(),
        pass: false,
        error: Some(error),
    }
}

pub(crate) fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool").install(f)
}
