use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs::{self, File, OpenOptions};
use std::os::unix::fs::FileExt;
use std::path::Path;

use num_rational::Ratio;
use zigzag::analysis::{ratio_formula, verify_mds, MdsVerdict};
use zigzag::code::{CodeArray, CodeSpec};
use zigzag::constructions::{
    assign_coefficients_random, build_duplication, build_from_vectors, build_optimal_general, build_optimal_r2,
    build_weight3, recommended_random_order,
};
use zigzag::decode::{compute_syndrome, decode_error, Correction, ErasureDecoder};
use zigzag::field::Elem;
use zigzag::linalg::RVector;
use zigzag::rebuild::{measure_ratio, plan_multi, RatioMode, RebuildExecutor};
use zigzag::{ElementSource, Error};

use crate::chunk::{ChunkHeader, ColumnType, HEADER_LEN};
use crate::cli::{Command, Construction};
use crate::error::{CliError, CliResult};
use crate::layout::{self, chunk_path, node_dir};
use crate::specfile;

const BATCH: usize = 4096;
const RANDOM_TRIES: usize = 200;

/// Runs one command and returns its report.
pub fn run(cmd: Command) -> CliResult<String> {
    match cmd {
        Command::Gen { construction, m, r, s, q, alpha, seed, out } => {
            gen(construction, GenParams { m, r, s, q, alpha, seed }, &out)
        }
        Command::Encode { spec, input, root } => encode(&specfile::read(&spec)?, &input, &root),
        Command::Fail { root, nodes } => fail(&root, &nodes),
        Command::Rebuild { spec, root } => rebuild(&specfile::read(&spec)?, &root).map(|r| r.text),
        Command::Decode { spec, root, output } => decode(&specfile::read(&spec)?, &root, &output),
        Command::Scrub { spec, root } => scrub(&specfile::read(&spec)?, &root),
        Command::Verify { spec } => verify(&specfile::read(&spec)?),
        Command::Ratio { spec, e } => ratio(&specfile::read(&spec)?, e),
    }
}

fn decimal(r: Ratio<u64>) -> String {
    format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
}

fn field_name(spec: &CodeSpec) -> String {
    let f = spec.field();
    if f.d() == 1 {
        format!("GF({})", f.p())
    } else {
        format!("GF({}^{})", f.p(), f.d())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GenParams {
    pub m: usize,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub q: Option<u32>,
    pub alpha: Option<u32>,
    pub seed: u64,
}

fn need<T>(v: Option<T>, flag: &str, what: Construction) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("{what:?} needs --{flag}")))
}

/// Builds the named construction.
pub fn build(what: Construction, a: GenParams) -> CliResult<(CodeSpec, Vec<String>)> {
    let mut notes = Vec::new();
    let spec = match what {
        Construction::OptimalR2 => build_optimal_r2(a.m)?,
        Construction::Dup => build_duplication(a.m, need(a.s, "s", what)?, a.q.unwrap_or(3))?,
        Construction::Weight3 => build_weight3(a.m, a.q.unwrap_or(9))?,
        Construction::OptimalGeneral => build_optimal_general(a.m, need(a.r, "r", what)?, need(a.q, "q", what)?, a.alpha)?,
        Construction::RandomCoeff => {
            let r = need(a.r, "r", what)?;
            let q = need(a.q, "q", what)?;
            let mut vectors = vec![RVector::zero(r as u32, a.m)];
            vectors.extend((1..=a.m).map(|i| RVector::unit(r as u32, a.m, i)));
            let skeleton = build_from_vectors(vectors, r, a.m)?;
            let advised = recommended_random_order(&skeleton);
            if (q as usize) < advised {
                notes.push(format!("warning: GF({q}) is below the order {advised} that guarantees an MDS assignment"));
            }
            assign_coefficients_random(&skeleton, q, a.seed, RANDOM_TRIES, r > 2)?
        }
    };
    Ok((spec, notes))
}

pub fn gen(what: Construction, params: GenParams, out: &Path) -> CliResult<String> {
    let (spec, notes) = build(what, params)?;
    specfile::write(out, &spec)?;
    let ratio = ratio_formula(&spec, RatioMode::Single)?;
    let mut text = String::new();
    for n in notes {
        let _ = writeln!(text, "{n}");
    }
    let _ = writeln!(text, "name: {}", spec.name());
    let _ = writeln!(text, "k = {}, r = {}, p = {}, field {}", spec.k(), spec.r(), spec.p(), field_name(&spec));
    let _ = writeln!(text, "ratio: {ratio} ({})", decimal(ratio));
    let _ = writeln!(text, "wrote {}", out.display());
    Ok(text)
}

fn node_kind(spec: &CodeSpec, idx: usize) -> ColumnType {
    if idx < spec.k() {
        ColumnType::Systematic
    } else {
        ColumnType::Parity
    }
}

fn field_q(spec: &CodeSpec) -> CliResult<u16> {
    let q = spec.field().q();
    layout::digits_per_byte(q)?;
    Ok(q as u16)
}

fn write_chunk(root: &Path, spec: &CodeSpec, idx: usize, stripes: u32, body: &[u8]) -> CliResult<()> {
    let dir = node_dir(root, idx);
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let header = ChunkHeader { q: field_q(spec)?, column: idx as u16, kind: node_kind(spec, idx), p: spec.p() as u32, stripes };
    let mut bytes = Vec::with_capacity(HEADER_LEN + body.len());
    bytes.extend_from_slice(&header.to_bytes());
    bytes.extend_from_slice(body);
    let path = chunk_path(root, idx);
    fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))
}

/// Opens a chunk and checks its header against the code.
fn open_chunk(root: &Path, spec: &CodeSpec, idx: usize, writable: bool) -> CliResult<(File, ChunkHeader)> {
    let path = chunk_path(root, idx);
    let file = OpenOptions::new().read(true).write(writable).open(&path).map_err(|e| CliError::io(&path, e))?;
    let mut head = [0u8; HEADER_LEN];
    let got = file.read_at(&mut head, 0).map_err(|e| CliError::io(&path, e))?;
    let header =
        ChunkHeader::from_bytes(&head[..got]).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))?;
    let want = (field_q(spec)?, idx as u16, node_kind(spec, idx), spec.p() as u32);
    if (header.q, header.column, header.kind, header.p) != want {
        return Err(CliError::Format(format!("{}: header {header:?} does not match the code", path.display())));
    }
    let len = file.metadata().map_err(|e| CliError::io(&path, e))?.len();
    if len != HEADER_LEN as u64 + header.body_len() {
        return Err(CliError::Format(format!("{}: body is {} bytes, header says {}", path.display(), len - HEADER_LEN as u64, header.body_len())));
    }
    Ok((file, header))
}

fn read_body(file: &File, header: &ChunkHeader, path: &Path) -> CliResult<Vec<u8>> {
    let mut body = vec![0u8; header.body_len() as usize];
    file.read_exact_at(&mut body, HEADER_LEN as u64).map_err(|e| CliError::io(path, e))?;
    Ok(body)
}

fn check_elements(bytes: &[u8], q: u16, path: &Path) -> CliResult<()> {
    match bytes.iter().position(|&b| b as u16 >= q) {
        Some(i) => Err(CliError::Format(format!("{}: element {} is outside GF({q})", path.display(), bytes[i]))),
        None => Ok(()),
    }
}

/// Live chunks with a consistent stripe count.
struct Array {
    files: Vec<Option<(File, ChunkHeader)>>,
    stripes: usize,
}

impl Array {
    fn open(spec: &CodeSpec, root: &Path, writable: bool) -> CliResult<Array> {
        let missing = layout::missing_nodes(root, spec.n());
        let mut files = Vec::with_capacity(spec.n());
        let mut stripes = None;
        for idx in 0..spec.n() {
            if missing.contains(&idx) {
                files.push(None);
                continue;
            }
            let (f, h) = open_chunk(root, spec, idx, writable)?;
            if *stripes.get_or_insert(h.stripes) != h.stripes {
                return Err(CliError::Format(format!("node {idx} has {} stripes, others {}", h.stripes, stripes.unwrap())));
            }
            files.push(Some((f, h)));
        }
        let stripes = stripes.ok_or_else(|| CliError::Io(format!("{}: no live nodes", root.display())))? as usize;
        Ok(Array { files, stripes })
    }

    fn missing(&self) -> Vec<usize> {
        (0..self.files.len()).filter(|&i| self.files[i].is_none()).collect()
    }

    fn body(&self, root: &Path, idx: usize) -> CliResult<Vec<u8>> {
        let (f, h) = self.files[idx].as_ref().expect("live node");
        let path = chunk_path(root, idx);
        let body = read_body(f, h, &path)?;
        check_elements(&body, h.q, &path)?;
        Ok(body)
    }
}

pub fn encode(spec: &CodeSpec, input: &Path, root: &Path) -> CliResult<String> {
    let bytes = fs::read(input).map_err(|e| CliError::io(input, e))?;
    if bytes.is_empty() {
        return Err(CliError::Usage(format!("{} is empty", input.display())));
    }
    let (p, k, r) = (spec.p(), spec.k(), spec.r());
    let q = field_q(spec)? as u32;
    let digits = layout::expand(&bytes, q, p * k)?;
    let stripes = digits.len() / (p * k);
    let stripes32 = u32::try_from(stripes).map_err(|_| CliError::Usage("input needs too many stripes".into()))?;
    let mut info = vec![vec![0u8; stripes * p]; k];
    for s in 0..stripes {
        for (j, col) in info.iter_mut().enumerate() {
            col[s * p..(s + 1) * p].copy_from_slice(&digits[s * p * k + j * p..s * p * k + (j + 1) * p]);
        }
    }
    let mut parity = vec![vec![0u8; stripes * p]; r];
    let mut views = vec![vec![0 as Elem; p]; k];
    let mut out = vec![Vec::new(); r];
    for s in 0..stripes {
        for (v, col) in views.iter_mut().zip(&info) {
            for (a, &b) in v.iter_mut().zip(&col[s * p..(s + 1) * p]) {
                *a = b as Elem;
            }
        }
        let slices: Vec<&[Elem]> = views.iter().map(Vec::as_slice).collect();
        spec.encode_into(&slices, &mut out);
        for (dst, src) in parity.iter_mut().zip(&out) {
            for (a, &b) in dst[s * p..(s + 1) * p].iter_mut().zip(src) {
                *a = b as u8;
            }
        }
    }
    fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
    for (idx, body) in info.iter().chain(parity.iter()).enumerate() {
        write_chunk(root, spec, idx, stripes32, body)?;
    }
    layout::write_manifest(root, bytes.len() as u64)?;
    Ok(format!(
        "encoded {} bytes into {stripes} stripes across {} nodes ({} bytes per chunk body)\n",
        bytes.len(),
        spec.n(),
        stripes * p
    ))
}

pub fn fail(root: &Path, nodes: &[usize]) -> CliResult<String> {
    let mut text = String::new();
    for &idx in nodes {
        let (from, to) = (node_dir(root, idx), layout::failed_dir(root, idx));
        if !from.is_dir() {
            return Err(CliError::Io(format!("{}: no such node", from.display())));
        }
        if to.exists() {
            fs::remove_dir_all(&to).map_err(|e| CliError::io(&to, e))?;
        }
        fs::rename(&from, &to).map_err(|e| CliError::io(&from, e))?;
        let _ = writeln!(text, "failed node {idx}");
    }
    Ok(text)
}

/// Reads a fixed set of body offsets per stripe, coalescing adjacent runs.
struct PlannedReader<'a> {
    file: &'a File,
    rows: Vec<usize>,
    bytes: u64,
}

impl PlannedReader<'_> {
    fn read(&mut self, p: usize, first: usize, count: usize, buf: &mut [u8]) -> std::io::Result<()> {
        let mut run: Option<(usize, usize)> = None;
        let flush = |run: (usize, usize), bytes: &mut u64, buf: &mut [u8]| {
            *bytes += (run.1 - run.0) as u64;
            self.file.read_exact_at(&mut buf[run.0..run.1], (HEADER_LEN + first * p + run.0) as u64)
        };
        for s in 0..count {
            for &row in &self.rows {
                let at = s * p + row;
                run = match run {
                    Some((a, b)) if b == at => Some((a, b + 1)),
                    Some(done) => {
                        flush(done, &mut self.bytes, buf)?;
                        Some((at, at + 1))
                    }
                    None => Some((at, at + 1)),
                };
            }
        }
        if let Some(done) = run {
            flush(done, &mut self.bytes, buf)?;
        }
        Ok(())
    }
}

struct StripeView<'a> {
    p: usize,
    s: usize,
    k: usize,
    nodes: &'a [Vec<u8>],
}

impl ElementSource for StripeView<'_> {
    fn info(&self, column: usize, row: usize) -> Elem {
        self.nodes[column][self.s * self.p + row] as Elem
    }

    fn parity(&self, l: usize, t: usize) -> Elem {
        self.nodes[self.k + l][self.s * self.p + t] as Elem
    }
}

/// Outcome of a rebuild: the report text and the byte accounting.
#[derive(Debug, Clone)]
pub struct RebuildReport {
    pub restored: Vec<usize>,
    pub per_node: BTreeMap<usize, u64>,
    pub total_read: u64,
    pub surviving_bytes: u64,
    pub ratio: Ratio<u64>,
    pub text: String,
}

pub fn rebuild(spec: &CodeSpec, root: &Path) -> CliResult<RebuildReport> {
    let array = Array::open(spec, root, false)?;
    let failed = array.missing();
    let (k, p, r, n) = (spec.k(), spec.p(), spec.r(), spec.n());
    if failed.is_empty() {
        return Err(CliError::Usage("no failed nodes".into()));
    }
    if failed.len() > r {
        return Err(CliError::Capability(format!("{} failed nodes exceed the {r} parities", failed.len())));
    }
    let stripes = array.stripes;
    let mut per_node: BTreeMap<usize, u64> = (0..n).filter(|i| !failed.contains(i)).map(|i| (i, 0)).collect();
    let mut restored: BTreeMap<usize, Vec<u8>> = BTreeMap::new();
    let mut note = None;

    if failed.iter().all(|&c| c < k) {
        let plan = plan_multi(spec, &failed)?;
        note = plan.diagnostic.clone();
        let exec = RebuildExecutor::new(spec, &plan)?;
        let mut wanted: Vec<(usize, Vec<usize>)> = plan.column_reads.clone();
        wanted.extend(plan.parity_reads.iter().enumerate().map(|(l, t)| (k + l, t.clone())));
        let mut readers: Vec<(usize, PlannedReader)> = wanted
            .into_iter()
            .filter(|(_, rows)| !rows.is_empty())
            .map(|(idx, rows)| (idx, PlannedReader { file: &array.files[idx].as_ref().expect("live").0, rows, bytes: 0 }))
            .collect();
        let mut out: Vec<Vec<u8>> = vec![vec![0u8; stripes * p]; failed.len()];
        let mut bufs = vec![Vec::new(); n];
        let q = field_q(spec)?;
        for first in (0..stripes).step_by(BATCH) {
            let count = BATCH.min(stripes - first);
            for (idx, reader) in readers.iter_mut() {
                let buf = &mut bufs[*idx];
                buf.clear();
                buf.resize(count * p, 0);
                reader.read(p, first, count, buf).map_err(|e| CliError::io(&chunk_path(root, *idx), e))?;
                check_elements(buf, q, &chunk_path(root, *idx))?;
            }
            for s in 0..count {
                let view = StripeView { p, s, k, nodes: &bufs };
                for (col, values) in out.iter_mut().zip(exec.execute(spec, &view)) {
                    for (dst, v) in col[(first + s) * p..(first + s + 1) * p].iter_mut().zip(values) {
                        *dst = v as u8;
                    }
                }
            }
        }
        for (idx, reader) in &readers {
            per_node.insert(*idx, reader.bytes);
        }
        restored.extend(plan.erased.iter().copied().zip(out));
    } else {
        // A parity is among the failures: read every surviving body.
        let parity_only = failed.iter().all(|&c| c >= k);
        let sources: Vec<usize> = if parity_only { (0..k).collect() } else { (0..n).filter(|i| !failed.contains(i)).collect() };
        let mut bodies = vec![Vec::new(); n];
        for &idx in &sources {
            bodies[idx] = array.body(root, idx)?;
            per_node.insert(idx, bodies[idx].len() as u64);
        }
        let decoder = ErasureDecoder::new(spec, &failed)?;
        let mut out: BTreeMap<usize, Vec<u8>> = failed.iter().map(|&c| (c, vec![0u8; stripes * p])).collect();
        let mut stripe = CodeArray::zeros(spec);
        for s in 0..stripes {
            load_stripe(&mut stripe, &bodies, s, p);
            stripe.erased = failed.iter().copied().collect();
            let fixed = decoder.decode(spec, &stripe);
            for (&c, body) in out.iter_mut() {
                for (dst, &v) in body[s * p..(s + 1) * p].iter_mut().zip(fixed.column(c)) {
                    *dst = v as u8;
                }
            }
        }
        restored = out;
    }

    for (idx, body) in &restored {
        write_chunk(root, spec, *idx, stripes as u32, body)?;
    }
    let total_read: u64 = per_node.values().sum();
    let surviving_bytes = ((n - failed.len()) * stripes * p) as u64;
    let ratio = Ratio::new(total_read, surviving_bytes);
    let mut text = String::new();
    if let Some(nd) = note {
        let _ = writeln!(text, "note: {nd}");
    }
    let _ = writeln!(text, "restored nodes: {}", failed.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
    for (idx, bytes) in &per_node {
        let _ = writeln!(text, "node {idx}: read {bytes} bytes");
    }
    let _ = writeln!(text, "total read: {total_read} of {surviving_bytes} bytes");
    let _ = writeln!(text, "ratio: {ratio} ({})", decimal(ratio));
    Ok(RebuildReport { restored: failed, per_node, total_read, surviving_bytes, ratio, text })
}

/// Copies stripe `s` of each body into `stripe`; absent bodies read as zero.
fn load_stripe(stripe: &mut CodeArray, bodies: &[Vec<u8>], s: usize, p: usize) {
    for (c, body) in bodies.iter().enumerate() {
        let col = stripe.column_mut(c);
        if body.is_empty() {
            col.iter_mut().for_each(|a| *a = 0);
        } else {
            for (a, &b) in col.iter_mut().zip(&body[s * p..(s + 1) * p]) {
                *a = b as Elem;
            }
        }
    }
}

pub fn decode(spec: &CodeSpec, root: &Path, output: &Path) -> CliResult<String> {
    let array = Array::open(spec, root, false)?;
    let len = layout::read_manifest(root)? as usize;
    let missing = array.missing();
    let (k, p, n) = (spec.k(), spec.p(), spec.n());
    if missing.len() > spec.r() {
        return Err(CliError::Capability(format!("{} failed nodes exceed the {} parities", missing.len(), spec.r())));
    }
    let stripes = array.stripes;
    let needed: Vec<usize> = if missing.iter().any(|&c| c < k) { (0..n).collect() } else { (0..k).collect() };
    let mut bodies = vec![Vec::new(); n];
    for &idx in needed.iter().filter(|i| !missing.contains(i)) {
        bodies[idx] = array.body(root, idx)?;
    }
    let mut digits = vec![0u8; stripes * p * k];
    if missing.iter().any(|&c| c < k) {
        let decoder = ErasureDecoder::new(spec, &missing)?;
        let mut stripe = CodeArray::zeros(spec);
        for s in 0..stripes {
            load_stripe(&mut stripe, &bodies, s, p);
            stripe.erased = missing.iter().copied().collect();
            let fixed = decoder.decode(spec, &stripe);
            for j in 0..k {
                for (dst, &v) in digits[s * p * k + j * p..s * p * k + (j + 1) * p].iter_mut().zip(&fixed.info[j]) {
                    *dst = v as u8;
                }
            }
        }
    } else {
        for s in 0..stripes {
            for (j, body) in bodies.iter().enumerate().take(k) {
                digits[s * p * k + j * p..s * p * k + (j + 1) * p].copy_from_slice(&body[s * p..(s + 1) * p]);
            }
        }
    }
    let bytes = layout::pack(&digits, spec.field().q(), len)?;
    fs::write(output, &bytes).map_err(|e| CliError::io(output, e))?;
    let mut text = String::new();
    if !missing.is_empty() {
        let _ = writeln!(text, "decoded around failed nodes {missing:?}");
    }
    let _ = writeln!(text, "wrote {} bytes to {}", bytes.len(), output.display());
    Ok(text)
}

enum StripeVerdict {
    Clean,
    Fixed(Vec<(usize, Vec<Elem>)>, String),
    Alarm(String),
}

fn scrub_stripe(spec: &CodeSpec, stripe: &CodeArray, bad: &BTreeSet<usize>, decoders: &mut HashMap<usize, ErasureDecoder>) -> CliResult<StripeVerdict> {
    let n = spec.n();
    let changed = |fixed: &CodeArray| -> Vec<(usize, Vec<Elem>)> {
        (0..n).filter(|&c| bad.contains(&c) || fixed.column(c) != stripe.column(c)).map(|c| (c, fixed.column(c).to_vec())).collect()
    };
    match bad.len() {
        0 => {}
        1 => {
            let c = *bad.iter().next().unwrap();
            let decoder = match decoders.entry(c) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => e.insert(ErasureDecoder::new(spec, &[c])?),
            };
            let mut damaged = stripe.clone();
            damaged.erase(&[c]);
            let fixed = decoder.decode(spec, &damaged);
            if !compute_syndrome(spec, &fixed).is_zero() {
                return Ok(StripeVerdict::Alarm(format!("out-of-field bytes in node {c} plus further errors")));
            }
            return Ok(StripeVerdict::Fixed(changed(&fixed), format!("node {c} (out-of-field bytes)")));
        }
        _ => return Ok(StripeVerdict::Alarm(format!("out-of-field bytes in nodes {bad:?}"))),
    }
    if spec.r() != 2 {
        return Ok(match compute_syndrome(spec, stripe).is_zero() {
            true => StripeVerdict::Clean,
            false => StripeVerdict::Alarm("nonzero syndrome; correction needs two parities".into()),
        });
    }
    match decode_error(spec, stripe) {
        Ok((_, Correction::None)) => Ok(StripeVerdict::Clean),
        Ok((fixed, Correction::Column(j))) => Ok(StripeVerdict::Fixed(changed(&fixed), format!("node {j}"))),
        Ok((fixed, Correction::Parity(l))) => Ok(StripeVerdict::Fixed(changed(&fixed), format!("node {}", spec.k() + l))),
        Err(Error::MultipleErrors) => Ok(StripeVerdict::Alarm("errors in more than one node".into())),
        Err(Error::AmbiguousError { columns }) => {
            Ok(StripeVerdict::Alarm(format!("error could be in any of nodes {columns:?}")))
        }
        Err(other) => Err(other.into()),
    }
}

pub fn scrub(spec: &CodeSpec, root: &Path) -> CliResult<String> {
    let array = Array::open(spec, root, true)?;
    let missing = array.missing();
    if !missing.is_empty() {
        return Err(CliError::Usage(format!("nodes {missing:?} are failed; rebuild before scrubbing")));
    }
    let (p, n) = (spec.p(), spec.n());
    let q = field_q(spec)?;
    let mut bodies = Vec::with_capacity(n);
    for idx in 0..n {
        let (f, h) = array.files[idx].as_ref().expect("live");
        bodies.push(read_body(f, h, &chunk_path(root, idx))?);
    }
    let mut stripe = CodeArray::zeros(spec);
    let mut decoders = HashMap::new();
    let mut fixes: Vec<(usize, usize, Vec<Elem>)> = Vec::new();
    let mut lines = Vec::new();
    let mut alarms = Vec::new();
    for s in 0..array.stripes {
        let mut bad = BTreeSet::new();
        for (c, body) in bodies.iter().enumerate() {
            for (a, &b) in stripe.column_mut(c).iter_mut().zip(&body[s * p..(s + 1) * p]) {
                if b as u16 >= q {
                    bad.insert(c);
                }
                *a = if (b as u16) < q { b as Elem } else { 0 };
            }
        }
        match scrub_stripe(spec, &stripe, &bad, &mut decoders)? {
            StripeVerdict::Clean => {}
            StripeVerdict::Fixed(changes, what) => {
                lines.push(format!("stripe {s}: corrected {what}"));
                fixes.extend(changes.into_iter().map(|(c, v)| (s, c, v)));
            }
            StripeVerdict::Alarm(why) => alarms.push(format!("stripe {s}: {why}")),
        }
    }
    if !alarms.is_empty() {
        let mut text = String::from("alarm: uncorrectable stripes, nothing written\n");
        for a in alarms.iter().chain(&lines) {
            let _ = writeln!(text, "{a}");
        }
        return Err(CliError::Verify(text.trim_end().to_string()));
    }
    for (s, c, values) in &fixes {
        let bytes: Vec<u8> = values.iter().map(|&v| v as u8).collect();
        let path = chunk_path(root, *c);
        let (f, _) = array.files[*c].as_ref().expect("live");
        f.write_all_at(&bytes, (HEADER_LEN + s * p) as u64).map_err(|e| CliError::io(&path, e))?;
    }
    let mut text = String::new();
    for l in &lines {
        let _ = writeln!(text, "{l}");
    }
    if lines.is_empty() {
        let _ = writeln!(text, "clean: {} stripes checked", array.stripes);
    } else {
        let _ = writeln!(text, "corrected {} of {} stripes", lines.len(), array.stripes);
    }
    Ok(text)
}

pub fn verify(spec: &CodeSpec) -> CliResult<String> {
    match verify_mds(spec) {
        MdsVerdict::Pass => Ok(format!("{}: MDS, any {} erasures decodable\n", spec.name(), spec.r())),
        MdsVerdict::Fail { witness } => {
            Err(CliError::Verify(format!("{}: not MDS, erasure set {witness:?} is not decodable", spec.name())))
        }
    }
}

pub fn ratio(spec: &CodeSpec, e: usize) -> CliResult<String> {
    if e == 0 || e > spec.k() {
        return Err(CliError::Usage(format!("--e must be in 1..={}", spec.k())));
    }
    let mode = if e == 1 { RatioMode::Single } else { RatioMode::Sets(e) };
    let measured = measure_ratio(spec, mode)?;
    let formula = ratio_formula(spec, mode)?;
    Ok(format!("ratio (e = {e}): {measured} ({}), formula {formula}\n", decimal(measured)))
}
