//! Syntax check of label specs, reporting the byte offset of the first error.
//!
//! ```text
//! label    := "GH:" int | "FOCK:" rat | alg ":" family "[" pair ("," pair)* "]"
//! alg      := "N2" | "SL2" | "VIR"
//! family   := "L" | "D+" | "D-" | "E" | "E+" | "E-" | "S" | ""
//! pair     := key "=" rat
//! key      := "i" | "p" | "r" | "s" | "lambda" | "flow"
//! rat      := "-"? digits ("/" digits)?
//! ```
//!
//! Semantic checks (ranges, momentum lattice) are left to the label constructors.

/// Offset and message of the first syntax error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

impl std::fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

struct Scan<'a> {
    s: &'a str,
    pos: usize,
}

impl Scan<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn one_of(&mut self, options: &[&str], what: &str) -> Result<String, SyntaxError> {
        // longest match first so "D+" wins over "D"
        let mut opts = options.to_vec();
        opts.sort_by_key(|o| std::cmp::Reverse(o.len()));
        for o in opts {
            if self.eat(o) {
                return Ok(o.to_string());
            }
        }
        self.err(format!("expected {what}"))
    }

    fn digits(&mut self) -> Result<(), SyntaxError> {
        let n = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if n == 0 {
            return self.err("expected digits");
        }
        self.pos += n;
        Ok(())
    }

    fn rational(&mut self) -> Result<(), SyntaxError> {
        self.eat("-");
        self.digits()?;
        if self.eat("/") {
            self.digits()?;
        }
        Ok(())
    }

    fn end(&self) -> Result<(), SyntaxError> {
        if self.pos != self.s.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

/// Checks `spec` against the label grammar.
pub fn check(spec: &str) -> Result<(), SyntaxError> {
    let mut sc = Scan { s: spec, pos: 0 };
    let alg = sc.one_of(&["N2", "SL2", "VIR", "GH", "FOCK"], "an algebra tag (N2, SL2, VIR, GH, FOCK)")?;
    if !sc.eat(":") {
        return sc.err("expected ':'");
    }
    match alg.as_str() {
        "GH" => {
            sc.digits()?;
            return sc.end();
        }
        "FOCK" => {
            sc.rational()?;
            return sc.end();
        }
        _ => {}
    }
    if !sc.rest().starts_with('[') {
        sc.one_of(&["L", "D+", "D-", "E", "E+", "E-", "S"], "a family tag")?;
    }
    if !sc.eat("[") {
        return sc.err("expected '['");
    }
    loop {
        sc.one_of(&["i", "p", "r", "s", "lambda", "flow"], "a key (i, p, r, s, lambda, flow)")?;
        if !sc.eat("=") {
            return sc.err("expected '='");
        }
        sc.rational()?;
        if sc.eat("]") {
            break;
        }
        if !sc.eat(",") {
            return sc.err("expected ',' or ']'");
        }
    }
    sc.end()
}
