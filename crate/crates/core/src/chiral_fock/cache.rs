//! On-disk store of family quotients.
//!
//! One JSON file per family, named by a SHA-256 of the key, plus `index.tsv` mapping
//! file names to readable keys. Records that fail to parse or carry a different
//! format version or epsilon tag are moved to `quarantine/`.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::elimination::SparseVec;
use super::quotient::{ClassQuotient, FockConfig, FockModule};
use super::relations::EpsilonConvention;
use super::{Content, Gen};
use crate::error::{Error, Result};
use crate::scalarfield::{make_field, Field, FieldMode, ScalarText};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Both chiralities share one record; the relations coincide letter for letter.
const CHIRALITY_TAG: &str = "shared";
const INDEX_FILE: &str = "index.tsv";
const QUARANTINE_DIR: &str = "quarantine";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub format: u32,
    pub epsilon: String,
    pub n: usize,
    pub field: String,
    pub chirality: String,
    pub content: Vec<u32>,
    pub relation_rows: usize,
    /// Spanning words in column order, letters as `[row, flavor]`.
    pub columns: Vec<Vec<[u8; 2]>>,
    pub pivots: Vec<usize>,
    pub basis: Vec<usize>,
    pub reductions: Vec<Vec<(usize, ScalarText)>>,
}

impl CacheRecord {
    pub fn key(&self) -> String {
        record_key(self.n, &self.field, &Content(self.content.clone()))
    }

    pub fn from_quotient(module: &FockModule, q: &ClassQuotient) -> CacheRecord {
        let columns: Vec<Vec<[u8; 2]>> = q
            .spanning_words()
            .iter()
            .map(|w| w.iter().map(|g| [g.row, g.flavor]).collect())
            .collect();
        let basis = q.basis_columns().to_vec();
        let pivots = (0..columns.len()).filter(|c| basis.binary_search(c).is_err()).collect();
        let reductions = (0..columns.len())
            .map(|c| q.reduction(c).iter().map(|(k, x)| (*k, x.encode())).collect())
            .collect();
        CacheRecord {
            format: CACHE_FORMAT_VERSION,
            epsilon: module.convention().tag().to_string(),
            n: module.n(),
            field: module.field().label(),
            chirality: CHIRALITY_TAG.to_string(),
            content: q.content().0.clone(),
            relation_rows: q.relation_rows(),
            columns,
            pivots,
            basis,
            reductions,
        }
    }

    pub(crate) fn into_quotient(
        self,
        field: &Field,
        lower: &HashMap<usize, Arc<ClassQuotient>>,
    ) -> Result<ClassQuotient> {
        let columns: Vec<Vec<Gen>> = self
            .columns
            .iter()
            .map(|w| w.iter().map(|[r, a]| Gen { row: *r, flavor: *a }).collect())
            .collect();
        let mut reductions: Vec<SparseVec> = Vec::with_capacity(self.reductions.len());
        for row in &self.reductions {
            let mut v = Vec::with_capacity(row.len());
            for (k, t) in row {
                if *k >= self.basis.len() {
                    return Err(Error::Cache(format!("basis index {k} out of range")));
                }
                v.push((*k, field.decode(t)?));
            }
            reductions.push(v);
        }
        ClassQuotient::from_parts(Content(self.content), columns, self.basis, reductions, self.relation_rows, lower)
    }

    /// The field this record was computed over.
    pub fn field(&self) -> Result<Field> {
        if self.field == "generic" {
            return make_field(FieldMode::GenericQ, None);
        }
        let h = self
            .field
            .strip_prefix('h')
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or_else(|| Error::Cache(format!("bad field label {}", self.field)))?;
        make_field(FieldMode::RootOfUnity, Some(h))
    }
}

pub fn record_key(n: usize, field_label: &str, content: &Content) -> String {
    let c: Vec<String> = content.0.iter().map(|x| x.to_string()).collect();
    format!("n={n};field={field_label};chirality={CHIRALITY_TAG};content={}", c.join(","))
}

fn file_name(key: &str) -> String {
    let digest = Sha256::digest(key.as_bytes());
    format!("{}.json", &hex::encode(digest)[..32])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStatus {
    pub file: String,
    pub key: String,
    /// `ok`, `listed`, or `quarantined: <reason>`.
    pub status: String,
    pub dimension: Option<usize>,
}

#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    index_lock: Mutex<()>,
}

impl DiskCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<DiskCache> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir, index_lock: Mutex::new(()) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn write_atomic(&self, name: &str, bytes: &[u8]) -> Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.dir.join(name)).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }

    fn read_index(&self) -> BTreeMap<String, String> {
        let Ok(text) = fs::read_to_string(self.dir.join(INDEX_FILE)) else { return BTreeMap::new() };
        text.lines()
            .filter_map(|l| l.split_once('\t'))
            .map(|(f, k)| (f.to_string(), k.to_string()))
            .collect()
    }

    fn write_index(&self, index: &BTreeMap<String, String>) -> Result<()> {
        let mut text = String::new();
        for (f, k) in index {
            text.push_str(&format!("{f}\t{k}\n"));
        }
        self.write_atomic(INDEX_FILE, text.as_bytes())
    }

    pub fn store(&self, module: &FockModule, q: &ClassQuotient) -> Result<()> {
        let record = CacheRecord::from_quotient(module, q);
        let key = record.key();
        let name = file_name(&key);
        self.write_atomic(&name, &serde_json::to_vec(&record)?)?;
        let _guard = self.index_lock.lock().unwrap();
        let mut index = self.read_index();
        index.insert(name, key);
        self.write_index(&index)
    }

    fn quarantine(&self, name: &str, reason: &str) -> Result<()> {
        let qdir = self.dir.join(QUARANTINE_DIR);
        fs::create_dir_all(&qdir)?;
        let src = self.dir.join(name);
        if src.exists() {
            fs::rename(&src, qdir.join(name))?;
        }
        fs::write(qdir.join(format!("{name}.reason")), reason)?;
        let _guard = self.index_lock.lock().unwrap();
        let mut index = self.read_index();
        if index.remove(name).is_some() {
            self.write_index(&index)?;
        }
        Ok(())
    }

    fn read_record(&self, name: &str) -> std::result::Result<CacheRecord, String> {
        let bytes = fs::read(self.dir.join(name)).map_err(|e| format!("unreadable: {e}"))?;
        let rec: CacheRecord = serde_json::from_slice(&bytes).map_err(|e| format!("corrupt: {e}"))?;
        if rec.format != CACHE_FORMAT_VERSION {
            return Err(format!("format version {} != {CACHE_FORMAT_VERSION}", rec.format));
        }
        if file_name(&rec.key()) != name {
            return Err("file name does not match record key".into());
        }
        Ok(rec)
    }

    /// Loads the record for `content` under the module's parameters. Unusable records
    /// are quarantined and reported as absent.
    pub fn load(&self, module: &FockModule, content: &Content) -> Result<Option<CacheRecord>> {
        let key = record_key(module.n(), &module.field().label(), content);
        let name = file_name(&key);
        if !self.dir.join(&name).exists() {
            return Ok(None);
        }
        match self.read_record(&name) {
            Ok(rec) if rec.epsilon == module.convention().tag() => Ok(Some(rec)),
            Ok(rec) => {
                self.quarantine(&name, &format!("epsilon convention {} differs", rec.epsilon))?;
                Ok(None)
            }
            Err(reason) => {
                self.quarantine(&name, &reason)?;
                Ok(None)
            }
        }
    }

    fn record_files(&self) -> Result<Vec<String>> {
        let mut names = Vec::new();
        for e in fs::read_dir(&self.dir)? {
            let e = e?;
            let name = e.file_name().to_string_lossy().to_string();
            if e.file_type()?.is_file() && name.ends_with(".json") {
                names.push(name);
            }
        }
        names.sort();
        Ok(names)
    }

    pub fn list(&self) -> Result<Vec<CacheStatus>> {
        let index = self.read_index();
        let mut out = Vec::new();
        for name in self.record_files()? {
            let (key, dimension) = match self.read_record(&name) {
                Ok(r) => (r.key(), Some(r.basis.len())),
                Err(_) => (index.get(&name).cloned().unwrap_or_default(), None),
            };
            out.push(CacheStatus { file: name, key, status: "listed".into(), dimension });
        }
        Ok(out)
    }

    /// Recomputes every record's family from scratch and compares. Records that do not
    /// parse, carry another epsilon tag, or disagree are quarantined.
    pub fn validate(&self, convention: EpsilonConvention, budget: usize) -> Result<Vec<CacheStatus>> {
        let mut out = Vec::new();
        let mut modules: BTreeMap<(usize, String), FockModule> = BTreeMap::new();
        for name in self.record_files()? {
            let verdict = match self.read_record(&name) {
                Err(reason) => Err((String::new(), reason)),
                Ok(rec) if rec.epsilon != convention.tag() => {
                    Err((rec.key(), format!("epsilon convention {} differs", rec.epsilon)))
                }
                Ok(rec) => {
                    let key = rec.key();
                    let mkey = (rec.n, rec.field.clone());
                    let module = match modules.get(&mkey) {
                        Some(m) => Ok(m),
                        None => rec.field().and_then(|f| {
                            let m = FockModule::new(rec.n, &f, FockConfig { budget, convention })?;
                            modules.insert(mkey.clone(), m);
                            Ok(&modules[&mkey])
                        }),
                    };
                    match module.and_then(|m| Ok((m.quotient(&Content(rec.content.clone()))?, m))) {
                        Err(e) => Err((key, format!("recompute failed: {e}"))),
                        Ok((q, m)) => {
                            if CacheRecord::from_quotient(m, &q) == rec {
                                Ok((key, rec.basis.len()))
                            } else {
                                Err((key, "stale: recomputed quotient differs".into()))
                            }
                        }
                    }
                }
            };
            match verdict {
                Ok((key, dim)) => out.push(CacheStatus { file: name, key, status: "ok".into(), dimension: Some(dim) }),
                Err((key, reason)) => {
                    self.quarantine(&name, &reason)?;
                    out.push(CacheStatus { file: name, key, status: format!("quarantined: {reason}"), dimension: None });
                }
            }
        }
        Ok(out)
    }

    /// Removes every record, the index, and the quarantine area. Returns the number of
    /// records removed.
    pub fn purge(&self) -> Result<usize> {
        let names = self.record_files()?;
        for name in &names {
            fs::remove_file(self.dir.join(name))?;
        }
        let index = self.dir.join(INDEX_FILE);
        if index.exists() {
            fs::remove_file(index)?;
        }
        let qdir = self.dir.join(QUARANTINE_DIR);
        if qdir.exists() {
            fs::remove_dir_all(qdir)?;
        }
        Ok(names.len())
    }
}
