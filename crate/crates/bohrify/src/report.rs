//! Plain-text reports with stable ordering and a trailing content digest.

use bohrify_core::C64;
use sha2::{Digest, Sha256};

use crate::model::LoadedModel;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    command: String,
    header: Vec<String>,
    lines: Vec<String>,
    failures: usize,
    checks: usize,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn model(&mut self, m: &LoadedModel) {
        self.header.push(format!(
            "model: {} (sha256 {}, dim {}, tol {:e})",
            m.name,
            m.digest,
            m.model.hilbert_dim(),
            m.tol
        ));
    }

    pub fn section(&mut self, title: impl AsRef<str>) {
        self.lines.push(String::new());
        self.lines.push(format!("== {} ==", title.as_ref()));
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// A verdict line `name: pass|FAIL (detail)`.
    pub fn check(&mut self, name: &str, passed: bool, detail: impl AsRef<str>) -> bool {
        self.checks += 1;
        if !passed {
            self.failures += 1;
        }
        let verdict = if passed { "pass" } else { "FAIL" };
        let detail = detail.as_ref();
        if detail.is_empty() {
            self.lines.push(format!("{name}: {verdict}"));
        } else {
            self.lines.push(format!("{name}: {verdict} ({detail})"));
        }
        passed
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("# bohrify report\n");
        out.push_str(&format!("command: {}\n", self.command));
        for h in &self.header {
            out.push_str(h);
            out.push('\n');
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push('\n');
        if self.passed() {
            out.push_str(&format!("verdict: pass ({} checks)\n", self.checks));
        } else {
            out.push_str(&format!(
                "verdict: FAIL ({} of {} checks failed)\n",
                self.failures, self.checks
            ));
        }
        let digest = hex::encode(Sha256::digest(out.as_bytes()));
        out.push_str(&format!("digest: sha256 {digest}\n"));
        out
    }
}

/// Compact complex number: real part alone when the imaginary part vanishes,
/// six decimals, no negative zero.
pub fn fmt_c(z: C64) -> String {
    fn r(x: f64) -> f64 {
        let y = (x * 1e6).round() / 1e6;
        if y == 0.0 {
            0.0
        } else {
            y
        }
    }
    let (re, im) = (r(z.re), r(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

pub fn fmt_list<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
