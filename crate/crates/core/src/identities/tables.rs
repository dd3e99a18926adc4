use std::collections::HashMap;
use std::sync::RwLock;

use crate::characters::DirichletCharacter;
use crate::divisors::{divisor_table, DivisorTable, ParityMode};
use crate::error::Result;

/// Source of divisor tables for the convolution engine. Implementations may
/// return a longer table than requested.
pub trait TableProvider: Sync {
    fn table(
        &self,
        l: u32,
        phi: &DirichletCharacter,
        psi: &DirichletCharacter,
        nmax: u64,
        field: u64,
    ) -> Result<DivisorTable>;
}

/// Computes every table from scratch.
pub struct FreshTables;

impl TableProvider for FreshTables {
    fn table(
        &self,
        l: u32,
        phi: &DirichletCharacter,
        psi: &DirichletCharacter,
        nmax: u64,
        field: u64,
    ) -> Result<DivisorTable> {
        divisor_table(l, phi, psi, nmax, field, ParityMode::Strict)
    }
}

type Key = (u32, String, String, u64);

/// In-memory memo keyed by `(l, φ, ψ, field)`, keeping the longest table
/// built so far.
#[derive(Default)]
pub struct TableCache {
    tables: RwLock<HashMap<Key, DivisorTable>>,
}

impl TableCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.tables.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Inserts an externally produced table (e.g. loaded from disk).
    pub fn insert(&self, table: DivisorTable) {
        let key = (table.l, table.phi.clone(), table.psi.clone(), table.field);
        let mut tables = self.tables.write().unwrap();
        match tables.get(&key) {
            Some(old) if old.nmax() >= table.nmax() => {}
            _ => {
                tables.insert(key, table);
            }
        }
    }

    pub fn get(&self, l: u32, phi: &str, psi: &str, field: u64) -> Option<DivisorTable> {
        let key = (l, phi.to_string(), psi.to_string(), field);
        self.tables.read().unwrap().get(&key).cloned()
    }

    pub fn tables(&self) -> Vec<DivisorTable> {
        let mut v: Vec<_> = self.tables.read().unwrap().values().cloned().collect();
        v.sort_by(|a, b| (a.l, &a.phi, &a.psi, a.field).cmp(&(b.l, &b.phi, &b.psi, b.field)));
        v
    }
}

impl TableProvider for TableCache {
    fn table(
        &self,
        l: u32,
        phi: &DirichletCharacter,
        psi: &DirichletCharacter,
        nmax: u64,
        field: u64,
    ) -> Result<DivisorTable> {
        let key = (l, phi.label_string(), psi.label_string(), field);
        if let Some(t) = self.tables.read().unwrap().get(&key) {
            if t.nmax() >= nmax {
                return Ok(t.clone());
            }
        }
        let t = divisor_table(l, phi, psi, nmax, field, ParityMode::Strict)?;
        self.insert(t.clone());
        Ok(t)
    }
}
