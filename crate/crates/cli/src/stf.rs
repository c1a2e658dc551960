//! The STF text format for triples, sextuples, forms and endomorphisms.
//!
//! ```text
//! # comment
//! field rational            | field prime <p>
//! ambient <n>
//! omega                     followed by n rows
//! isotropic <j> dim <r>     followed by r rows, j = 1, 2, 3
//! coisotropic <j> dim <r>   optional, defaults to the ω-orthogonal of I_j
//! form                      optional bilinear form, followed by n rows
//! matrix <name>             optional n x n matrix, followed by n rows
//! subspace <name> dim <r>   optional named subspace, followed by r rows
//! ```

use std::fmt::Write as _;

use isotriple::{Error, FieldCtx, IsotropicTriple, Mat, Result, Scalar, Sextuple, Subspace};

/// A parsed STF document. Every present piece is validated on load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StfDocument {
    pub ctx: FieldCtx,
    pub ambient: usize,
    pub omega: Option<Mat>,
    pub iso: Option<[Subspace; 3]>,
    pub coiso: Option<[Subspace; 3]>,
    pub form: Option<Mat>,
    pub matrices: Vec<(String, Mat)>,
    pub subspaces: Vec<(String, Subspace)>,
}

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn err_at(line: usize, e: Error) -> Error {
    match e {
        Error::Parse(m) => err(line, m),
        other => err(line, other),
    }
}

/// Parse a field name as used on the command line or in the header:
/// `Q`, `rational`, `F5`, `F_5`, `prime 5`.
pub fn parse_field(s: &str) -> Result<FieldCtx> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
        return Ok(FieldCtx::Rational);
    }
    let digits = t
        .strip_prefix("prime")
        .or_else(|| t.strip_prefix("F_"))
        .or_else(|| t.strip_prefix('F'))
        .ok_or_else(|| Error::Parse(format!("unknown field '{t}'")))?;
    let p: u64 = digits
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("unknown field '{t}'")))?;
    FieldCtx::prime(p)
}

pub fn field_header(ctx: FieldCtx) -> String {
    match ctx {
        FieldCtx::Rational => "field rational".into(),
        FieldCtx::Prime(p) => format!("field prime {p}"),
    }
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let r = self.items.get(self.pos).copied();
        self.pos += 1;
        r
    }

    fn last_line(&self) -> usize {
        self.items.last().map(|x| x.0).unwrap_or(0)
    }

    fn rows(&mut self, ctx: FieldCtx, count: usize, width: usize) -> Result<Vec<Vec<Scalar>>> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let (ln, l) = self
                .next()
                .ok_or_else(|| err(self.last_line(), format!("expected {count} rows")))?;
            let row: Vec<Scalar> = l
                .split_whitespace()
                .map(|t| ctx.parse(t).map_err(|e| err_at(ln, e)))
                .collect::<Result<_>>()?;
            if row.len() != width {
                return Err(err(ln, format!("expected {width} entries, found {}", row.len())));
            }
            out.push(row);
        }
        Ok(out)
    }
}

fn square(ctx: FieldCtx, rows: Vec<Vec<Scalar>>, n: usize) -> Mat {
    if n == 0 {
        Mat::zeros(ctx, 0, 0)
    } else {
        Mat::from_rows(ctx, rows)
    }
}

fn slot(tok: Option<&str>, ln: usize) -> Result<usize> {
    match tok.and_then(|t| t.parse::<usize>().ok()) {
        Some(j @ 1..=3) => Ok(j - 1),
        _ => Err(err(ln, "subspace index must be 1, 2 or 3")),
    }
}

fn dim_clause(toks: &[&str], at: usize, ln: usize) -> Result<usize> {
    if toks.get(at) != Some(&"dim") {
        return Err(err(ln, "expected 'dim <r>'"));
    }
    toks.get(at + 1)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(ln, "expected 'dim <r>'"))
}

impl StfDocument {
    pub fn empty(ctx: FieldCtx, ambient: usize) -> StfDocument {
        StfDocument {
            ctx,
            ambient,
            omega: None,
            iso: None,
            coiso: None,
            form: None,
            matrices: Vec::new(),
            subspaces: Vec::new(),
        }
    }

    pub fn from_triple(t: &IsotropicTriple) -> StfDocument {
        StfDocument {
            omega: Some(t.omega.clone()),
            iso: Some(t.iso.clone()),
            ..StfDocument::empty(t.ctx, t.ambient())
        }
    }

    pub fn from_sextuple(s: &Sextuple) -> StfDocument {
        StfDocument {
            iso: Some([s.i(1).clone(), s.i(2).clone(), s.i(3).clone()]),
            coiso: Some([s.c(1).clone(), s.c(2).clone(), s.c(3).clone()]),
            ..StfDocument::empty(s.ctx, s.ambient)
        }
    }

    /// Parse and validate every present piece.
    pub fn parse(text: &str) -> Result<StfDocument> {
        let doc = StfDocument::parse_unchecked(text)?;
        doc.validate()?;
        Ok(doc)
    }

    /// Parse without checking that `omega` is symplectic or that the
    /// subspaces are isotropic; used to diagnose broken forms.
    pub fn parse_unchecked(text: &str) -> Result<StfDocument> {
        let mut lines = Lines::new(text);
        let (ln, first) = lines.next().ok_or_else(|| err(1, "empty document"))?;
        let ctx = match first.strip_prefix("field") {
            Some(rest) => parse_field(rest).map_err(|e| err_at(ln, e))?,
            None => return Err(err(ln, "expected 'field rational' or 'field prime <p>'")),
        };
        let (ln, second) = lines.next().ok_or_else(|| err(ln, "expected 'ambient <n>'"))?;
        let n: usize = second
            .strip_prefix("ambient")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| err(ln, "expected 'ambient <n>'"))?;
        let mut doc = StfDocument::empty(ctx, n);
        let mut iso: [Option<Subspace>; 3] = [None, None, None];
        let mut coiso: [Option<Subspace>; 3] = [None, None, None];
        while let Some((ln, l)) = lines.next() {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks[0] {
                "omega" | "form" => {
                    let m = square(ctx, lines.rows(ctx, n, n)?, n);
                    let target = if toks[0] == "omega" { &mut doc.omega } else { &mut doc.form };
                    if target.is_some() {
                        return Err(err(ln, format!("duplicate '{}' section", toks[0])));
                    }
                    *target = Some(m);
                }
                "isotropic" | "coisotropic" => {
                    let j = slot(toks.get(1).copied(), ln)?;
                    let r = dim_clause(&toks, 2, ln)?;
                    let rows = lines.rows(ctx, r, n)?;
                    let s = Subspace::from_vectors(ctx, n, &rows);
                    if s.dim() != r {
                        return Err(err(ln, format!("rows are not linearly independent (rank {})", s.dim())));
                    }
                    let target = if toks[0] == "isotropic" { &mut iso[j] } else { &mut coiso[j] };
                    if target.is_some() {
                        return Err(err(ln, format!("duplicate '{} {}' section", toks[0], j + 1)));
                    }
                    *target = Some(s);
                }
                "matrix" => {
                    let name = toks.get(1).ok_or_else(|| err(ln, "expected 'matrix <name>'"))?;
                    let m = square(ctx, lines.rows(ctx, n, n)?, n);
                    doc.matrices.push((name.to_string(), m));
                }
                "subspace" => {
                    let name = toks.get(1).ok_or_else(|| err(ln, "expected 'subspace <name> dim <r>'"))?;
                    let r = dim_clause(&toks, 2, ln)?;
                    let rows = lines.rows(ctx, r, n)?;
                    doc.subspaces.push((name.to_string(), Subspace::from_vectors(ctx, n, &rows)));
                }
                other => return Err(err(ln, format!("unknown section '{other}'"))),
            }
        }
        doc.iso = collect3(iso, "isotropic", lines.last_line())?;
        doc.coiso = collect3(coiso, "coisotropic", lines.last_line())?;
        Ok(doc)
    }

    fn validate(&self) -> Result<()> {
        if let Some(om) = &self.omega {
            let iso = self.iso.clone().unwrap_or_else(|| {
                let z = Subspace::zero(self.ctx, self.ambient);
                [z.clone(), z.clone(), z]
            });
            let t = IsotropicTriple::new(om.clone(), iso)?;
            if let Some(co) = &self.coiso {
                let s = t.underlying_sextuple();
                for j in 1..=3 {
                    if &co[j - 1] != s.c(j) {
                        return Err(Error::Parse(format!("coisotropic {j} is not the ω-orthogonal of isotropic {j}")));
                    }
                }
            }
        }
        if self.coiso.is_some() {
            if self.iso.is_none() {
                return Err(Error::Parse("coisotropic sections need isotropic sections".into()));
            }
            self.to_sextuple()?;
        }
        Ok(())
    }

    /// The isotropic triple; needs `omega` and the three isotropic sections.
    pub fn to_triple(&self) -> Result<IsotropicTriple> {
        let om = self.omega.clone().ok_or_else(|| Error::Parse("document has no 'omega' section".into()))?;
        let iso = self.iso.clone().ok_or_else(|| Error::Parse("document has no isotropic sections".into()))?;
        IsotropicTriple::new(om, iso)
    }

    /// The sextuple from the coisotropic sections, or else from `omega`.
    pub fn to_sextuple(&self) -> Result<Sextuple> {
        match (&self.coiso, &self.iso) {
            (Some(c), Some(i)) => Sextuple::new([
                c[0].clone(),
                i[0].clone(),
                c[1].clone(),
                i[1].clone(),
                c[2].clone(),
                i[2].clone(),
            ]),
            _ => Ok(self.to_triple()?.underlying_sextuple()),
        }
    }

    pub fn matrix(&self, name: &str) -> Option<&Mat> {
        self.matrices.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// Canonical text; subspaces are printed by their RREF bases.
    pub fn print(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", field_header(self.ctx));
        let _ = writeln!(s, "ambient {}", self.ambient);
        if let Some(om) = &self.omega {
            s.push_str("omega\n");
            write_rows(&mut s, om);
        }
        if let Some(iso) = &self.iso {
            for (j, sub) in iso.iter().enumerate() {
                let _ = writeln!(s, "isotropic {} dim {}", j + 1, sub.dim());
                write_rows(&mut s, &sub.basis);
            }
        }
        if let Some(co) = &self.coiso {
            for (j, sub) in co.iter().enumerate() {
                let _ = writeln!(s, "coisotropic {} dim {}", j + 1, sub.dim());
                write_rows(&mut s, &sub.basis);
            }
        }
        if let Some(f) = &self.form {
            s.push_str("form\n");
            write_rows(&mut s, f);
        }
        for (name, m) in &self.matrices {
            let _ = writeln!(s, "matrix {name}");
            write_rows(&mut s, m);
        }
        for (name, sub) in &self.subspaces {
            let _ = writeln!(s, "subspace {} dim {}", name, sub.dim());
            write_rows(&mut s, &sub.basis);
        }
        s
    }
}

fn collect3(v: [Option<Subspace>; 3], what: &str, line: usize) -> Result<Option<[Subspace; 3]>> {
    match v {
        [None, None, None] => Ok(None),
        [Some(a), Some(b), Some(c)] => Ok(Some([a, b, c])),
        _ => Err(err(line, format!("all three {what} sections are required when one is given"))),
    }
}

fn write_rows(s: &mut String, m: &Mat) {
    for i in 0..m.rows {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
}

/// Rows of a matrix as arrays of scalar strings, for JSON output.
pub fn mat_rows(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}
