//! Line-oriented text formats for semirings, modules, morphisms, simplicial
//! objects and sheaves.
//!
//! A document is a sequence of blocks. Each block opens with a header line
//! and continues with `key: values` fields; an indented line continues the
//! previous field. `#` starts a comment when it begins a token.
//!
//! ```text
//! semiring B1
//! elements: 0 1
//! zero: 0
//! gamma: g
//! add: 0 1 1 1
//! ternary: 0 0 0 0 0 0 0 1
//! module MB1 over B1
//! elements: 0 1
//! zero: 0
//! add: 0 1 1 1
//! action: 0 0 0 0 0 0 0 1
//! morphism id : MB1 -> MB1
//! map: 0 1
//! ```
//!
//! Simplicial objects list `truncation:`, `level N: MODULE`, `face N I:` and
//! `degeneracy N I:` tables; simplicial maps list `level N:` tables. Sheaves
//! list `points:`, `opens:` as `{p,q}` tokens, `section OPEN: MODULE` and
//! `restrict BIG SMALL: MORPHISM`. Names share one namespace per document.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use tgw_core::angulation::same_simplicial_tables;
use tgw_core::simplicial::{SimplicialModule, SimplicialMorphism};
use tgw_core::spectrum::{FiniteSpace, TriadicSheaf};
use tgw_core::{Error, FiniteCommutativeMonoid, ModuleMorphism, Result, TernaryGammaModule, TernaryGammaSemiring};

/// Resolved contents of one or more input files.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub semirings: BTreeMap<String, Arc<TernaryGammaSemiring>>,
    pub modules: BTreeMap<String, Arc<TernaryGammaModule>>,
    pub morphisms: BTreeMap<String, ModuleMorphism>,
    pub simplicial: BTreeMap<String, Arc<SimplicialModule>>,
    pub simplicial_maps: BTreeMap<String, SimplicialMorphism>,
    pub sheaves: BTreeMap<String, TriadicSheaf>,
}

#[derive(Clone, Debug)]
struct Tok {
    text: String,
    line: usize,
    col: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Semiring,
    Module,
    Morphism,
    Simplicial,
    SimplicialMap,
    Sheaf,
}

impl Kind {
    fn keyword(self) -> &'static str {
        match self {
            Kind::Semiring => "semiring",
            Kind::Module => "module",
            Kind::Morphism => "morphism",
            Kind::Simplicial => "simplicial",
            Kind::SimplicialMap => "simplicial-map",
            Kind::Sheaf => "sheaf",
        }
    }

    fn from_keyword(s: &str) -> Option<Kind> {
        [Kind::Semiring, Kind::Module, Kind::Morphism, Kind::Simplicial, Kind::SimplicialMap, Kind::Sheaf]
            .into_iter()
            .find(|k| k.keyword() == s)
    }
}

#[derive(Debug)]
struct Field {
    key: Vec<Tok>,
    values: Vec<Tok>,
}

impl Field {
    fn key_text(&self) -> String {
        self.key.iter().map(|t| t.text.as_str()).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug)]
struct Block {
    kind: Kind,
    header: Vec<Tok>,
    fields: Vec<Field>,
    file: String,
}

fn err_at(file: &str, t: &Tok, message: impl Into<String>) -> Error {
    let message = message.into();
    Error::Parse {
        line: t.line,
        column: t.col,
        message: if file.is_empty() { message } else { format!("{file}: {message}") },
    }
}

fn tokenize(line: &str, line_no: usize) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut col = 0;
    for (byte, ch) in line.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push(Tok { text: line[b..byte].to_string(), line: line_no, col: c });
            }
        } else if start.is_none() {
            if ch == '#' {
                return out;
            }
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push(Tok { text: line[b..].to_string(), line: line_no, col: c });
    }
    out
}

fn split_blocks(file: &str, text: &str) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let toks = tokenize(line, i + 1);
        let Some(first) = toks.first() else { continue };
        let indented = line.starts_with(|c: char| c.is_whitespace());
        if indented {
            let field = blocks
                .last_mut()
                .and_then(|b| b.fields.last_mut())
                .ok_or_else(|| err_at(file, first, "continuation line outside a field"))?;
            field.values.extend(toks);
            continue;
        }
        if let Some(kind) = Kind::from_keyword(&first.text) {
            blocks.push(Block { kind, header: toks, fields: Vec::new(), file: file.to_string() });
            continue;
        }
        let block = blocks
            .last_mut()
            .ok_or_else(|| err_at(file, first, format!("expected a block header, found `{}`", first.text)))?;
        let Some(end) = toks.iter().position(|t| t.text.ends_with(':')) else {
            return Err(err_at(file, first, format!("expected `key:`, found `{}`", first.text)));
        };
        let mut key: Vec<Tok> = toks[..=end].to_vec();
        let last = key.last_mut().expect("key token");
        last.text.pop();
        if last.text.is_empty() {
            key.pop();
        }
        if key.is_empty() {
            return Err(err_at(file, first, "empty field key"));
        }
        block.fields.push(Field { key, values: toks[end + 1..].to_vec() });
    }
    Ok(blocks)
}

/// Header shapes: `semiring N`, `module N over S`, `morphism N : A -> B`,
/// `simplicial N`, `simplicial-map N : X -> Y`, `sheaf N`.
fn header_parts<'a>(b: &'a Block) -> Result<(&'a Tok, Vec<&'a Tok>)> {
    let h = &b.header;
    let bad = |what: &str| err_at(&b.file, &h[0], format!("malformed {} header: expected {what}", b.kind.keyword()));
    match b.kind {
        Kind::Semiring | Kind::Simplicial | Kind::Sheaf => {
            if h.len() != 2 {
                return Err(bad("`KEYWORD NAME`"));
            }
            Ok((&h[1], Vec::new()))
        }
        Kind::Module => {
            if h.len() != 4 || h[2].text != "over" {
                return Err(bad("`module NAME over SEMIRING`"));
            }
            Ok((&h[1], vec![&h[3]]))
        }
        Kind::Morphism | Kind::SimplicialMap => {
            if h.len() != 6 || h[2].text != ":" || h[4].text != "->" {
                return Err(bad("`NAME : SOURCE -> TARGET`"));
            }
            Ok((&h[1], vec![&h[3], &h[5]]))
        }
    }
}

struct Fields<'a> {
    block: &'a Block,
    used: Vec<bool>,
}

impl<'a> Fields<'a> {
    fn new(block: &'a Block) -> Self {
        Fields { block, used: vec![false; block.fields.len()] }
    }

    fn take(&mut self, key: &str) -> Result<&'a Field> {
        self.try_take(key)?.ok_or_else(|| {
            err_at(&self.block.file, &self.block.header[0], format!("missing field `{key}:` in {} {}", self.block.kind.keyword(), self.block.header.get(1).map_or("", |t| &t.text)))
        })
    }

    fn try_take(&mut self, key: &str) -> Result<Option<&'a Field>> {
        let mut found = None;
        for (i, f) in self.block.fields.iter().enumerate() {
            if f.key_text() == key {
                if found.is_some() {
                    return Err(err_at(&self.block.file, &f.key[0], format!("duplicate field `{key}:`")));
                }
                self.used[i] = true;
                found = Some(f);
            }
        }
        Ok(found)
    }

    /// Fields whose key starts with `word`, marked used.
    fn take_prefixed(&mut self, word: &str) -> Vec<&'a Field> {
        let mut out = Vec::new();
        for (i, f) in self.block.fields.iter().enumerate() {
            if f.key[0].text == word && f.key.len() > 1 {
                self.used[i] = true;
                out.push(f);
            }
        }
        out
    }

    fn finish(self) -> Result<()> {
        match self.used.iter().position(|&u| !u) {
            Some(i) => {
                let f = &self.block.fields[i];
                Err(err_at(&self.block.file, &f.key[0], format!("unexpected field `{}:`", f.key_text())))
            }
            None => Ok(()),
        }
    }
}

fn single<'a>(file: &str, f: &'a Field) -> Result<&'a Tok> {
    match f.values.as_slice() {
        [t] => Ok(t),
        _ => Err(err_at(file, &f.key[0], format!("`{}:` takes exactly one value, found {}", f.key_text(), f.values.len()))),
    }
}

fn number(file: &str, t: &Tok) -> Result<usize> {
    t.text.parse().map_err(|_| err_at(file, t, format!("expected a number, found `{}`", t.text)))
}

fn names_of(file: &str, f: &Field) -> Result<(Vec<String>, HashMap<String, usize>)> {
    let mut index = HashMap::new();
    let mut names = Vec::new();
    for t in &f.values {
        if index.insert(t.text.clone(), names.len()).is_some() {
            return Err(err_at(file, t, format!("duplicate name `{}`", t.text)));
        }
        names.push(t.text.clone());
    }
    if names.is_empty() {
        return Err(err_at(file, &f.key[0], format!("`{}:` needs at least one name", f.key_text())));
    }
    Ok((names, index))
}

fn lookup(file: &str, index: &HashMap<String, usize>, t: &Tok, what: &str) -> Result<usize> {
    index.get(&t.text).copied().ok_or_else(|| err_at(file, t, format!("unknown {what} `{}`", t.text)))
}

/// A table of element names, checked against its expected length.
fn table(file: &str, f: &Field, index: &HashMap<String, usize>, expected: usize, what: &str) -> Result<Vec<usize>> {
    if f.values.len() != expected {
        let at = f.values.get(expected).unwrap_or(&f.key[0]);
        return Err(err_at(
            file,
            at,
            format!("`{}:` table has {} entries, expected {expected}", f.key_text(), f.values.len()),
        ));
    }
    f.values.iter().map(|t| lookup(file, index, t, what)).collect()
}

fn index_map(names: &[String]) -> HashMap<String, usize> {
    names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect()
}

fn parse_open(file: &str, t: &Tok, points: &HashMap<String, usize>) -> Result<Vec<usize>> {
    let inner = t
        .text
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| err_at(file, t, format!("expected an open like `{{p,q}}`, found `{}`", t.text)))?;
    let mut out: Vec<usize> = Vec::new();
    if !inner.is_empty() {
        for p in inner.split(',') {
            let i = points
                .get(p)
                .copied()
                .ok_or_else(|| err_at(file, t, format!("unknown point `{p}`")))?;
            out.push(i);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn signature(b: &Block) -> String {
    let mut s: Vec<&str> = b.header.iter().map(|t| t.text.as_str()).collect();
    for f in &b.fields {
        s.push("\n");
        s.extend(f.key.iter().map(|t| t.text.as_str()));
        s.push(":");
        s.extend(f.values.iter().map(|t| t.text.as_str()));
    }
    s.join(" ")
}

fn fail_at(file: &str, t: &Tok, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => err_at(file, t, other.to_string()),
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        Document::parse_files(&[("", text)])
    }

    /// Parses several files into one namespace; blocks may refer to names
    /// defined in any of them, in any order.
    pub fn parse_files(files: &[(&str, &str)]) -> Result<Document> {
        let mut blocks = Vec::new();
        for (name, text) in files {
            blocks.extend(split_blocks(name, text)?);
        }
        // a block repeated verbatim in another file is read once
        let mut seen: HashMap<String, (String, usize, String)> = HashMap::new();
        let mut kept = Vec::with_capacity(blocks.len());
        for b in blocks {
            let (name, _) = header_parts(&b)?;
            let sig = signature(&b);
            if let Some((file, line, old)) = seen.get(&name.text) {
                if *old == sig && *file != b.file {
                    continue;
                }
                let at = if file.is_empty() { format!("line {line}") } else { format!("{file}:{line}") };
                return Err(err_at(&b.file, name, format!("`{}` is already defined at {at}", name.text)));
            }
            seen.insert(name.text.clone(), (b.file.clone(), name.line, sig));
            kept.push(b);
        }
        let mut blocks = kept;
        blocks.sort_by_key(|b| b.kind);
        let mut doc = Document::default();
        for b in &blocks {
            let (name, refs) = header_parts(b)?;
            match b.kind {
                Kind::Semiring => doc.semiring_block(b, name)?,
                Kind::Module => doc.module_block(b, name, refs[0])?,
                Kind::Morphism => doc.morphism_block(b, name, refs[0], refs[1])?,
                Kind::Simplicial => doc.simplicial_block(b, name)?,
                Kind::SimplicialMap => doc.simplicial_map_block(b, name, refs[0], refs[1])?,
                Kind::Sheaf => doc.sheaf_block(b, name)?,
            }
        }
        Ok(doc)
    }

    fn carrier(file: &str, fs: &mut Fields) -> Result<(FiniteCommutativeMonoid, HashMap<String, usize>)> {
        let ef = fs.take("elements")?;
        let (names, index) = names_of(file, ef)?;
        let zf = fs.take("zero")?;
        let zero = lookup(file, &index, single(file, zf)?, "element")?;
        let af = fs.take("add")?;
        let n = names.len();
        let add = table(file, af, &index, n * n, "element")?;
        let m = FiniteCommutativeMonoid::new(n, zero, add, Some(names)).map_err(|e| fail_at(file, &ef.key[0], e))?;
        Ok((m, index))
    }

    fn semiring_block(&mut self, b: &Block, name: &Tok) -> Result<()> {
        let f = &b.file;
        let mut fs = Fields::new(b);
        let (carrier, index) = Self::carrier(f, &mut fs)?;
        let gf = fs.take("gamma")?;
        let (gammas, _) = names_of(f, gf)?;
        let tf = fs.take("ternary")?;
        let t = carrier.size();
        let g = gammas.len();
        let ternary = table(f, tf, &index, t * g * t * g * t, "element")?;
        fs.finish()?;
        let s = TernaryGammaSemiring::new(&name.text, carrier, gammas, ternary).map_err(|e| fail_at(f, name, e))?;
        self.semirings.insert(name.text.clone(), Arc::new(s));
        Ok(())
    }

    fn module_block(&mut self, b: &Block, name: &Tok, over: &Tok) -> Result<()> {
        let f = &b.file;
        let s = self
            .semirings
            .get(&over.text)
            .cloned()
            .ok_or_else(|| err_at(f, over, format!("unknown semiring `{}`", over.text)))?;
        let mut fs = Fields::new(b);
        let (carrier, index) = Self::carrier(f, &mut fs)?;
        let af = fs.take("action")?;
        let (t, g, m) = (s.size(), s.gamma_size(), carrier.size());
        let action = table(f, af, &index, t * g * m * g * t, "element")?;
        fs.finish()?;
        let module = TernaryGammaModule::new(&name.text, s, carrier, action).map_err(|e| fail_at(f, name, e))?;
        self.modules.insert(name.text.clone(), Arc::new(module));
        Ok(())
    }

    fn module_ref(&self, file: &str, t: &Tok) -> Result<Arc<TernaryGammaModule>> {
        self.modules
            .get(&t.text)
            .cloned()
            .ok_or_else(|| err_at(file, t, format!("unknown module `{}`", t.text)))
    }

    fn morphism_block(&mut self, b: &Block, name: &Tok, src: &Tok, dst: &Tok) -> Result<()> {
        let f = &b.file;
        let (a, c) = (self.module_ref(f, src)?, self.module_ref(f, dst)?);
        let mut fs = Fields::new(b);
        let mf = fs.take("map")?;
        let t = table(f, mf, &index_map(&c.element_names()), a.size(), "element")?;
        fs.finish()?;
        let m = ModuleMorphism::new(&name.text, a, c, t).map_err(|e| fail_at(f, name, e))?;
        self.morphisms.insert(name.text.clone(), m);
        Ok(())
    }

    fn simplicial_block(&mut self, b: &Block, name: &Tok) -> Result<()> {
        let f = &b.file;
        let mut fs = Fields::new(b);
        let tf = fs.take("truncation")?;
        let top = number(f, single(f, tf)?)?;
        let mut levels: Vec<Option<Arc<TernaryGammaModule>>> = vec![None; top + 1];
        for lf in fs.take_prefixed("level") {
            let n = Self::indices(f, lf, 1)?[0];
            if n > top {
                return Err(err_at(f, &lf.key[1], format!("level {n} above truncation {top}")));
            }
            if levels[n].is_some() {
                return Err(err_at(f, &lf.key[0], format!("duplicate level {n}")));
            }
            levels[n] = Some(self.module_ref(f, single(f, lf)?)?);
        }
        let levels: Vec<Arc<TernaryGammaModule>> = levels
            .into_iter()
            .enumerate()
            .map(|(n, l)| l.ok_or_else(|| err_at(f, name, format!("missing `level {n}:`"))))
            .collect::<Result<_>>()?;
        let mut faces: Vec<Vec<Option<Vec<usize>>>> = (0..=top).map(|n| vec![None; if n == 0 { 0 } else { n + 1 }]).collect();
        let mut degens: Vec<Vec<Option<Vec<usize>>>> = (0..=top).map(|n| vec![None; if n < top { n + 1 } else { 0 }]).collect();
        for (word, slots, shift) in [("face", &mut faces, -1isize), ("degeneracy", &mut degens, 1)] {
            for mf in fs.take_prefixed(word) {
                let ix = Self::indices(f, mf, 2)?;
                let (n, i) = (ix[0], ix[1]);
                let slot = slots
                    .get_mut(n)
                    .and_then(|row| row.get_mut(i))
                    .ok_or_else(|| err_at(f, &mf.key[0], format!("no {word} {n} {i} at truncation {top}")))?;
                if slot.is_some() {
                    return Err(err_at(f, &mf.key[0], format!("duplicate {word} {n} {i}")));
                }
                let dst = &levels[(n as isize + shift) as usize];
                *slot = Some(table(f, mf, &index_map(&dst.element_names()), levels[n].size(), "element")?);
            }
        }
        fs.finish()?;
        let collect = |rows: Vec<Vec<Option<Vec<usize>>>>, word: &str| -> Result<Vec<Vec<Vec<usize>>>> {
            rows.into_iter()
                .enumerate()
                .map(|(n, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(|(i, t)| t.ok_or_else(|| err_at(f, name, format!("missing `{word} {n} {i}:`"))))
                        .collect()
                })
                .collect()
        };
        let x = SimplicialModule::from_tables(&name.text, levels, collect(faces, "face")?, collect(degens, "degeneracy")?)
            .map_err(|e| fail_at(f, name, e))?;
        self.simplicial.insert(name.text.clone(), Arc::new(x));
        Ok(())
    }

    fn indices(file: &str, field: &Field, count: usize) -> Result<Vec<usize>> {
        if field.key.len() != count + 1 {
            return Err(err_at(file, &field.key[0], format!("`{}` takes {count} index(es)", field.key[0].text)));
        }
        field.key[1..].iter().map(|t| number(file, t)).collect()
    }

    fn simplicial_map_block(&mut self, b: &Block, name: &Tok, src: &Tok, dst: &Tok) -> Result<()> {
        let f = &b.file;
        let get = |t: &Tok| {
            self.simplicial
                .get(&t.text)
                .cloned()
                .ok_or_else(|| err_at(f, t, format!("unknown simplicial object `{}`", t.text)))
        };
        let (x, y) = (get(src)?, get(dst)?);
        let mut fs = Fields::new(b);
        let mut tables: Vec<Option<Vec<usize>>> = vec![None; x.truncation() + 1];
        for lf in fs.take_prefixed("level") {
            let n = Self::indices(f, lf, 1)?[0];
            if n > x.truncation() || n > y.truncation() {
                return Err(err_at(f, &lf.key[1], format!("level {n} above truncation")));
            }
            if tables[n].is_some() {
                return Err(err_at(f, &lf.key[0], format!("duplicate level {n}")));
            }
            tables[n] = Some(table(f, lf, &index_map(&y.level(n).element_names()), x.level(n).size(), "element")?);
        }
        fs.finish()?;
        let tables = tables
            .into_iter()
            .enumerate()
            .map(|(n, t)| t.ok_or_else(|| err_at(f, name, format!("missing `level {n}:`"))))
            .collect::<Result<Vec<_>>>()?;
        let m = SimplicialMorphism::from_tables(&name.text, x, y, tables).map_err(|e| fail_at(f, name, e))?;
        self.simplicial_maps.insert(name.text.clone(), m);
        Ok(())
    }

    fn sheaf_block(&mut self, b: &Block, name: &Tok) -> Result<()> {
        let f = &b.file;
        let mut fs = Fields::new(b);
        let pf = fs.take("points")?;
        let (points, pindex) = names_of(f, pf)?;
        let of = fs.take("opens")?;
        let mut opens = Vec::new();
        for t in &of.values {
            opens.push(parse_open(f, t, &pindex)?);
        }
        let space = FiniteSpace::new(points, opens).map_err(|e| fail_at(f, &of.key[0], e))?;
        let mut sections: Vec<Option<Arc<TernaryGammaModule>>> = vec![None; space.opens.len()];
        for sf in fs.take_prefixed("section") {
            if sf.key.len() != 2 {
                return Err(err_at(f, &sf.key[0], "expected `section OPEN: MODULE`"));
            }
            let o = parse_open(f, &sf.key[1], &pindex)?;
            let k = space
                .index_of(&o)
                .ok_or_else(|| err_at(f, &sf.key[1], format!("`{}` is not among the opens", sf.key[1].text)))?;
            if sections[k].is_some() {
                return Err(err_at(f, &sf.key[1], format!("duplicate section over `{}`", sf.key[1].text)));
            }
            sections[k] = Some(self.module_ref(f, single(f, sf)?)?);
        }
        let sections = sections
            .into_iter()
            .enumerate()
            .map(|(k, s)| s.ok_or_else(|| err_at(f, name, format!("missing section over {}", space.open_label(k)))))
            .collect::<Result<Vec<_>>>()?;
        let mut restrictions = BTreeMap::new();
        for rf in fs.take_prefixed("restrict") {
            if rf.key.len() != 3 {
                return Err(err_at(f, &rf.key[0], "expected `restrict BIG SMALL: MORPHISM`"));
            }
            let mut ends = [0; 2];
            for (e, t) in ends.iter_mut().zip(&rf.key[1..]) {
                let o = parse_open(f, t, &pindex)?;
                *e = space
                    .index_of(&o)
                    .ok_or_else(|| err_at(f, t, format!("`{}` is not among the opens", t.text)))?;
            }
            let t = single(f, rf)?;
            let m = self
                .morphisms
                .get(&t.text)
                .cloned()
                .ok_or_else(|| err_at(f, t, format!("unknown morphism `{}`", t.text)))?;
            if restrictions.insert((ends[0], ends[1]), m).is_some() {
                return Err(err_at(f, &rf.key[0], "duplicate restriction"));
            }
        }
        fs.finish()?;
        let sheaf = TriadicSheaf::new(&name.text, space, sections, restrictions).map_err(|e| fail_at(f, name, e))?;
        self.sheaves.insert(name.text.clone(), sheaf);
        Ok(())
    }
}

/// Element names usable as tokens, or plain indices when they are not.
fn token_names(names: Vec<String>) -> Vec<String> {
    let valid = |n: &String| {
        !n.is_empty() && !n.starts_with('#') && !n.ends_with(':') && !n.chars().any(char::is_whitespace)
    };
    let mut seen = std::collections::HashSet::new();
    if names.iter().all(|n| valid(n) && seen.insert(n.clone())) {
        names
    } else {
        (0..names.len()).map(|i| i.to_string()).collect()
    }
}

fn check_name(name: &str, what: &str) -> Result<()> {
    let bad = name.is_empty()
        || name.chars().any(char::is_whitespace)
        || name.starts_with('#')
        || name.ends_with(':')
        || Kind::from_keyword(name).is_some();
    if bad {
        return Err(Error::Malformed {
            what: what.to_string(),
            detail: format!("`{name}` cannot be written as a name"),
        });
    }
    Ok(())
}

fn conflict(what: &str, name: &str) -> Error {
    Error::Malformed {
        what: what.to_string(),
        detail: format!("a different object named `{name}` is already in the document"),
    }
}

fn module_names(m: &TernaryGammaModule) -> Vec<String> {
    token_names(m.element_names())
}

fn line(out: &mut String, key: &str, values: impl IntoIterator<Item = String>) {
    out.push_str(key);
    out.push(':');
    for v in values {
        out.push(' ');
        out.push_str(&v);
    }
    out.push('\n');
}

fn names_table(names: &[String], table: &[usize]) -> Vec<String> {
    table.iter().map(|&i| names[i].clone()).collect()
}

fn open_token(space: &FiniteSpace, o: usize) -> String {
    let names: Vec<&str> = space.opens[o].iter().map(|&p| space.points[p].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

impl Document {
    /// Names taken by any block.
    fn taken(&self, name: &str) -> bool {
        self.semirings.contains_key(name)
            || self.modules.contains_key(name)
            || self.morphisms.contains_key(name)
            || self.simplicial.contains_key(name)
            || self.simplicial_maps.contains_key(name)
            || self.sheaves.contains_key(name)
    }

    pub fn add_semiring(&mut self, s: &Arc<TernaryGammaSemiring>) -> Result<()> {
        check_name(s.name(), "semiring")?;
        if let Some(old) = self.semirings.get(s.name()) {
            return if **old == **s { Ok(()) } else { Err(conflict("semiring", s.name())) };
        }
        if self.taken(s.name()) {
            return Err(conflict("semiring", s.name()));
        }
        self.semirings.insert(s.name().to_string(), s.clone());
        Ok(())
    }

    pub fn add_module(&mut self, m: &Arc<TernaryGammaModule>) -> Result<()> {
        check_name(m.name(), "module")?;
        self.add_semiring(m.semiring())?;
        if let Some(old) = self.modules.get(m.name()) {
            return if old.same_tables(m) && old.semiring() == m.semiring() {
                Ok(())
            } else {
                Err(conflict("module", m.name()))
            };
        }
        if self.taken(m.name()) {
            return Err(conflict("module", m.name()));
        }
        self.modules.insert(m.name().to_string(), m.clone());
        Ok(())
    }

    pub fn add_morphism(&mut self, f: &ModuleMorphism) -> Result<()> {
        check_name(f.name(), "morphism")?;
        self.add_module(f.source())?;
        self.add_module(f.target())?;
        if let Some(old) = self.morphisms.get(f.name()) {
            let same = old.table() == f.table()
                && old.source().name() == f.source().name()
                && old.target().name() == f.target().name();
            return if same { Ok(()) } else { Err(conflict("morphism", f.name())) };
        }
        if self.taken(f.name()) {
            return Err(conflict("morphism", f.name()));
        }
        self.morphisms.insert(f.name().to_string(), f.clone());
        Ok(())
    }

    pub fn add_simplicial(&mut self, x: &Arc<SimplicialModule>) -> Result<()> {
        check_name(x.name(), "simplicial object")?;
        for l in x.levels() {
            self.add_module(l)?;
        }
        if let Some(old) = self.simplicial.get(x.name()) {
            let same = same_simplicial_tables(old, x)
                && (0..=x.truncation()).all(|n| old.level(n).name() == x.level(n).name());
            return if same { Ok(()) } else { Err(conflict("simplicial object", x.name())) };
        }
        if self.taken(x.name()) {
            return Err(conflict("simplicial object", x.name()));
        }
        self.simplicial.insert(x.name().to_string(), x.clone());
        Ok(())
    }

    pub fn add_simplicial_map(&mut self, f: &SimplicialMorphism) -> Result<()> {
        check_name(&f.name, "simplicial map")?;
        self.add_simplicial(&f.source)?;
        self.add_simplicial(&f.target)?;
        if self.taken(&f.name) {
            return Err(conflict("simplicial map", &f.name));
        }
        self.simplicial_maps.insert(f.name.clone(), f.clone());
        Ok(())
    }

    pub fn add_sheaf(&mut self, s: &TriadicSheaf) -> Result<()> {
        check_name(&s.name, "sheaf")?;
        for p in &s.space.points {
            if p.is_empty() || p.contains([',', '{', '}']) || p.chars().any(char::is_whitespace) {
                return Err(Error::Malformed {
                    what: "sheaf".into(),
                    detail: format!("point `{p}` cannot be written"),
                });
            }
        }
        for m in &s.sections {
            self.add_module(m)?;
        }
        for r in s.restrictions.values() {
            self.add_morphism(r)?;
        }
        if self.taken(&s.name) {
            return Err(conflict("sheaf", &s.name));
        }
        self.sheaves.insert(s.name.clone(), s.clone());
        Ok(())
    }

    /// Canonical text: blocks grouped by kind in dependency order, sorted by
    /// name within a kind, one field per line, single spaces.
    pub fn serialize(&self) -> String {
        let mut blocks: Vec<String> = Vec::new();
        for (name, s) in &self.semirings {
            let mut b = format!("semiring {name}\n");
            let names = token_names((0..s.size()).map(|i| s.carrier().name(i)).collect());
            line(&mut b, "elements", names.iter().cloned());
            line(&mut b, "zero", [names[s.zero()].clone()]);
            line(&mut b, "gamma", token_names(s.gamma_names().to_vec()));
            line(&mut b, "add", names_table(&names, s.carrier().table()));
            line(&mut b, "ternary", names_table(&names, s.table()));
            blocks.push(b);
        }
        for (name, m) in &self.modules {
            let mut b = format!("module {name} over {}\n", m.semiring().name());
            let names = module_names(m);
            let carrier = m.carrier();
            line(&mut b, "elements", names.iter().cloned());
            line(&mut b, "zero", [names[m.zero()].clone()]);
            line(&mut b, "add", names_table(&names, carrier.table()));
            line(&mut b, "action", names_table(&names, &m.action_table()));
            blocks.push(b);
        }
        for (name, f) in &self.morphisms {
            let mut b = format!("morphism {name} : {} -> {}\n", f.source().name(), f.target().name());
            line(&mut b, "map", names_table(&module_names(f.target()), f.table()));
            blocks.push(b);
        }
        for (name, x) in &self.simplicial {
            let mut b = format!("simplicial {name}\n");
            let top = x.truncation();
            line(&mut b, "truncation", [top.to_string()]);
            for n in 0..=top {
                line(&mut b, &format!("level {n}"), [x.level(n).name().to_string()]);
            }
            for n in 1..=top {
                let names = module_names(x.level(n - 1));
                for i in 0..=n {
                    line(&mut b, &format!("face {n} {i}"), names_table(&names, x.face(n, i).table()));
                }
            }
            for n in 0..top {
                let names = module_names(x.level(n + 1));
                for i in 0..=n {
                    line(&mut b, &format!("degeneracy {n} {i}"), names_table(&names, x.degeneracy(n, i).table()));
                }
            }
            blocks.push(b);
        }
        for (name, f) in &self.simplicial_maps {
            let mut b = format!("simplicial-map {name} : {} -> {}\n", f.source.name(), f.target.name());
            for (n, l) in f.levels.iter().enumerate() {
                line(&mut b, &format!("level {n}"), names_table(&module_names(f.target.level(n)), l.table()));
            }
            blocks.push(b);
        }
        for (name, s) in &self.sheaves {
            let mut b = format!("sheaf {name}\n");
            line(&mut b, "points", s.space.points.iter().cloned());
            line(&mut b, "opens", (0..s.space.opens.len()).map(|o| open_token(&s.space, o)));
            for (k, m) in s.sections.iter().enumerate() {
                line(&mut b, &format!("section {}", open_token(&s.space, k)), [m.name().to_string()]);
            }
            for (&(big, small), r) in &s.restrictions {
                let key = format!("restrict {} {}", open_token(&s.space, big), open_token(&s.space, small));
                line(&mut b, &key, [r.name().to_string()]);
            }
            blocks.push(b);
        }
        blocks.join("\n")
    }

    pub fn is_empty(&self) -> bool {
        self.semirings.is_empty()
            && self.modules.is_empty()
            && self.morphisms.is_empty()
            && self.simplicial.is_empty()
            && self.simplicial_maps.is_empty()
            && self.sheaves.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tgw_core::corpus;

    const B1: &str = "\
# the two-element Boolean semiring
semiring B1
elements: 0 1
zero: 0
gamma: g
add: 0 1 1 1
ternary: 0 0 0 0 0 0 0 1
";

    #[test]
    fn parses_b1() {
        let doc = Document::parse(B1).unwrap();
        let s = &doc.semirings["B1"];
        assert_eq!(**s, corpus::b1());
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let doc = Document::parse(B1).unwrap();
        let once = doc.serialize();
        let twice = Document::parse(&once).unwrap().serialize();
        assert_eq!(once, twice);
        assert_eq!(once, B1.lines().skip(1).collect::<Vec<_>>().join("\n") + "\n");
    }

    #[test]
    fn wrong_table_length_names_both_counts() {
        let text = B1.replace("ternary: 0 0 0 0 0 0 0 1", "ternary: 0 0 0 0 0 0 0");
        let e = Document::parse(&text).unwrap_err();
        let Error::Parse { line, message, .. } = e else { panic!("{e:?}") };
        assert_eq!(line, 7);
        assert!(message.contains("7 entries, expected 8"), "{message}");
    }

    #[test]
    fn unknown_element_carries_its_column() {
        let text = B1.replace("add: 0 1 1 1", "add: 0 1 x 1");
        let Error::Parse { line, column, .. } = Document::parse(&text).unwrap_err() else { panic!() };
        assert_eq!((line, column), (6, 10));
    }

    #[test]
    fn continuation_lines_extend_a_field() {
        let text = B1.replace("ternary: 0 0 0 0 0 0 0 1", "ternary: 0 0 0 0\n  0 0 0 1");
        assert_eq!(Document::parse(&text).unwrap().serialize(), Document::parse(B1).unwrap().serialize());
    }

    #[test]
    fn blocks_may_come_in_any_order() {
        let text = format!("module M over B1\nelements: 0 1\nzero: 0\nadd: 0 1 1 1\naction: 0 0 0 0 0 0 0 1\n{B1}");
        let doc = Document::parse(&text).unwrap();
        assert!(doc.modules["M"].same_tables(&corpus::mb1()));
    }

    #[test]
    fn corpus_objects_round_trip() {
        let t = 2;
        let mut doc = Document::default();
        doc.add_simplicial_map(&corpus::z3_angle_base(t)).unwrap();
        doc.add_morphism(&corpus::diagonal_mb1()).unwrap();
        doc.add_sheaf(&corpus::z3_two_point_sheaf()).unwrap();
        let text = doc.serialize();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back.serialize(), text);
        assert_eq!(back.sheaves.len(), 1);
        assert_eq!(back.simplicial["c(MZ3)"].truncation(), t);
        assert_eq!(back.simplicial_maps["double"].level(1).table(), &[0, 2, 1]);
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let text = format!("{B1}semiring B1\nelements: 0\nzero: 0\ngamma: g\nadd: 0\nternary: 0\n");
        let Error::Parse { line, message, .. } = Document::parse(&text).unwrap_err() else { panic!() };
        assert_eq!(line, 8);
        assert!(message.contains("already defined"));
    }
}
