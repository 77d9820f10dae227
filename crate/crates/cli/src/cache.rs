//! JSON-lines result cache. Each line is one record whose `query` field is
//! the command with its canonical inputs.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use serde_json::Value;

pub struct Cache {
    path: Option<PathBuf>,
}

impl Cache {
    pub fn new(path: Option<PathBuf>) -> Self {
        Cache { path }
    }

    pub fn disabled() -> Self {
        Cache { path: None }
    }

    /// Latest record for `query` accepted by `usable`. Unreadable lines are skipped.
    pub fn lookup(&self, query: &str, usable: impl Fn(&Value) -> bool) -> Option<Value> {
        let file = File::open(self.path.as_ref()?).ok()?;
        BufReader::new(file)
            .lines()
            .map_while(Result::ok)
            .filter_map(|line| serde_json::from_str::<Value>(&line).ok())
            .filter(|v| v.get("query").and_then(Value::as_str) == Some(query) && usable(v))
            .last()
    }

    pub fn store(&self, record: &Value) -> std::io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(f, "{record}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_latest_wins() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().join("sub/cache.jsonl")));
        assert!(cache.lookup("dist a b", |_| true).is_none());
        cache.store(&json!({"query": "dist a b", "result": 3})).unwrap();
        cache.store(&json!({"query": "dist a c", "result": 5})).unwrap();
        cache
            .store(&json!({"query": "dist a b", "result": 3, "witness": ["x"]}))
            .unwrap();
        let hit = cache.lookup("dist a b", |_| true).unwrap();
        assert_eq!(hit["witness"][0], "x");
        assert!(cache.lookup("dist a b", |v| v["result"] == 4).is_none());
    }

    #[test]
    fn disabled_cache_never_hits() {
        let cache = Cache::disabled();
        cache.store(&json!({"query": "q"})).unwrap();
        assert!(cache.lookup("q", |_| true).is_none());
    }
}
