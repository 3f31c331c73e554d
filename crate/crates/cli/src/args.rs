//! Minimal flag parser: positionals plus `--flag` / `--flag=value`.

use std::collections::HashMap;

#[derive(Debug, Default)]
pub struct Args {
    pub positional: Vec<String>,
    pub flags: HashMap<String, String>,
}

impl Args {
    pub fn parse<I: IntoIterator<Item = String>>(items: I) -> Args {
        let mut args = Args::default();
        for item in items {
            if let Some(body) = item.strip_prefix("--") {
                match body.split_once('=') {
                    Some((k, v)) => args.flags.insert(k.to_string(), v.to_string()),
                    None => args.flags.insert(body.to_string(), "true".to_string()),
                };
            } else {
                args.positional.push(item);
            }
        }
        args
    }

    pub fn flag(&self, name: &str) -> Option<&str> {
        self.flags.get(name).map(|s| s.as_str())
    }

    pub fn has(&self, name: &str) -> bool {
        self.flags.contains_key(name)
    }

    pub fn flag_u64(&self, name: &str, default: u64) -> Result<u64, String> {
        match self.flag(name) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| format!("--{name} expects an integer, got '{v}'")),
        }
    }

    pub fn flag_f64(&self, name: &str, default: f64) -> Result<f64, String> {
        match self.flag(name) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| format!("--{name} expects a number, got '{v}'")),
        }
    }

    pub fn pos_u64(&self, i: usize, what: &str) -> Result<u64, String> {
        self.positional
            .get(i)
            .ok_or_else(|| format!("missing argument: {what}"))?
            .parse()
            .map_err(|_| format!("{what} must be an integer"))
    }
}
