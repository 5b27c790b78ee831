//! Named elements. `--labels x1,x2,x3` lets inputs say `x1,x2|x3` and adds
//! a named rendering next to each echoed input.

use std::collections::HashMap;

use atomdec::SetPartition;

use crate::CliError;

#[derive(Debug, Clone, Default)]
pub struct Labels {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Labels {
    pub fn new(names: Vec<String>) -> Result<Self, CliError> {
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains(['|', ',', ';', '-']) {
                return Err(CliError::Usage(format!(
                    "label `{name}` is empty or contains a separator"
                )));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(CliError::Usage(format!("label `{name}` is given twice")));
            }
        }
        Ok(Labels { names, index })
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Rewrites every label token in `text` to its index. Numeric tokens
    /// pass through.
    pub fn resolve(&self, text: &str) -> String {
        if self.is_empty() {
            return text.to_string();
        }
        let mut out = String::with_capacity(text.len());
        let mut token = String::new();
        let flush = |token: &mut String, out: &mut String| {
            let t = token.trim();
            match self.index.get(t) {
                Some(i) => out.push_str(&i.to_string()),
                None => out.push_str(t),
            }
            token.clear();
        };
        for c in text.chars() {
            if matches!(c, '|' | ',' | ';' | '-') {
                flush(&mut token, &mut out);
                out.push(c);
            } else {
                token.push(c);
            }
        }
        flush(&mut token, &mut out);
        out
    }

    /// Checks that the labels name exactly the `n` elements.
    pub fn check_n(&self, n: usize) -> Result<(), CliError> {
        if !self.is_empty() && self.names.len() != n {
            return Err(CliError::Usage(format!(
                "{} labels given for {n} elements",
                self.names.len()
            )));
        }
        Ok(())
    }

    pub fn name(&self, x: usize) -> String {
        self.names.get(x).cloned().unwrap_or_else(|| x.to_string())
    }

    /// `pi` with element names in place of indices, if labels are set.
    pub fn render_partition(&self, pi: &SetPartition) -> Option<String> {
        (!self.is_empty()).then(|| {
            pi.blocks()
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&x| self.name(x))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect::<Vec<_>>()
                .join("|")
        })
    }

    /// An atom list with element names, if labels are set.
    pub fn render_atoms<'a>(
        &self,
        atoms: impl IntoIterator<Item = &'a atomdec::Atom>,
    ) -> Option<String> {
        (!self.is_empty()).then(|| {
            atoms
                .into_iter()
                .map(|a| format!("{}-{}", self.name(a.a()), self.name(a.b())))
                .collect::<Vec<_>>()
                .join(",")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(s: &str) -> Labels {
        Labels::new(s.split(',').map(String::from).collect()).unwrap()
    }

    #[test]
    fn resolves_names_and_numbers() {
        let l = labels("x1,x2,x3,x4");
        assert_eq!(l.resolve("x1,x2|x3,3"), "0,1|2,3");
        assert_eq!(l.resolve("x1-x2; x3-x4"), "0-1;2-3");
        assert_eq!(Labels::default().resolve("a|b"), "a|b");
    }

    #[test]
    fn renders_with_names() {
        let l = labels("a,b,c");
        let pi: SetPartition = "0,2|1".parse().unwrap();
        assert_eq!(l.render_partition(&pi).unwrap(), "a,c|b");
        assert!(Labels::default().render_partition(&pi).is_none());
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(Labels::new(vec!["a".into(), "a".into()]).is_err());
        assert!(Labels::new(vec!["a-b".into()]).is_err());
        assert!(labels("a,b").check_n(3).is_err());
    }
}
