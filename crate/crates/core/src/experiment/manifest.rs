use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;

pub const MANIFEST_FILE: &str = "manifest.txt";

/// Files written for one seed (or for the whole run when `seed` is `None`).
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: Option<u64>,
    pub files: Vec<PathBuf>,
    pub wall_ms: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub config_hash: String,
    pub seeds: Vec<u64>,
    pub threads: usize,
    pub runs: Vec<RunRecord>,
    pub started_unix: u64,
}

impl RunManifest {
    pub fn files(&self) -> impl Iterator<Item = &PathBuf> {
        self.runs.iter().flat_map(|r| r.files.iter())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let seeds: Vec<String> = self.seeds.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "command = {}", self.command);
        let _ = writeln!(out, "config_hash = {}", self.config_hash);
        let _ = writeln!(out, "seeds = {}", seeds.join(","));
        let _ = writeln!(out, "algrec = {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "threads = {}", self.threads);
        let _ = writeln!(out, "started_unix = {}", self.started_unix);
        for r in &self.runs {
            match r.seed {
                Some(s) => {
                    let _ = writeln!(out, "\n[run seed={s} wall_ms={}]", r.wall_ms);
                }
                None => {
                    let _ = writeln!(out, "\n[summary wall_ms={}]", r.wall_ms);
                }
            }
            for f in &r.files {
                let _ = writeln!(out, "file = {}", f.display());
            }
        }
        out
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(MANIFEST_FILE);
        std::fs::write(&path, self.to_text())?;
        Ok(path)
    }
}
