use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{IterationRecord, Observer};
use crate::error::Result;
use crate::grid::{io, TriField};

pub const HISTORY_HEADER: &str = "iteration,energy,r1,r2,r3,lambda1,lambda2,lambda3";

/// Streams the iteration history to CSV and writes `u.bin`, `v.bin`, `w.bin`
/// every `every` iterations (never when `every == 0`).
pub struct Checkpointer {
    dir: PathBuf,
    every: usize,
    history: Option<BufWriter<File>>,
}

impl Checkpointer {
    pub fn new(dir: impl AsRef<Path>, every: usize, history: bool) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let history = if history {
            let mut w = BufWriter::new(File::create(dir.join("history.csv"))?);
            writeln!(w, "{HISTORY_HEADER}")?;
            Some(w)
        } else {
            None
        };
        Ok(Self { dir, every, history })
    }

    pub fn write_fields(&self, state: &TriField) -> Result<()> {
        write_triple(&self.dir, state)
    }

    pub fn finish(&mut self) -> Result<()> {
        if let Some(w) = self.history.as_mut() {
            w.flush()?;
        }
        Ok(())
    }
}

pub(crate) fn write_triple(dir: &Path, state: &TriField) -> Result<()> {
    for (name, f) in ["u", "v", "w"].iter().zip(state.components()) {
        io::write_field(dir.join(format!("{name}.bin")), f)?;
    }
    Ok(())
}

pub(crate) fn history_row(r: &IterationRecord) -> String {
    format!(
        "{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
        r.iteration,
        r.energy,
        r.residuals[0],
        r.residuals[1],
        r.residuals[2],
        r.multipliers[0],
        r.multipliers[1],
        r.multipliers[2]
    )
}

impl Observer for Checkpointer {
    fn observe(&mut self, record: &IterationRecord, state: &TriField) -> Result<()> {
        if let Some(w) = self.history.as_mut() {
            writeln!(w, "{}", history_row(record))?;
        }
        if self.every > 0 && record.iteration.is_multiple_of(self.every) {
            self.write_fields(state)?;
        }
        Ok(())
    }
}

impl Drop for Checkpointer {
    fn drop(&mut self) {
        let _ = self.finish();
    }
}
