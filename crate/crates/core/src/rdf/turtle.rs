//! A Turtle subset: `@prefix`/`PREFIX`, prefixed names, `a`, predicate lists
//! (`;`), object lists (`,`), blank node labels, blank node property lists,
//! collections, language tags, typed, numeric and boolean literals. Quoted
//! triples and `@base` are rejected with [`RdfError::UnsupportedTurtle`].
//!
//! Anonymous blank nodes get labels `genid1`, `genid2`, ..., with the stem
//! lengthened if the document already uses it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::lexer::Cursor;
use super::term::{write_escaped, BlankNode, Iri, Literal, Term, Triple};
use super::vocab::{rdf, xsd};
use super::{Graph, RdfError};

pub fn parse_turtle(text: &str) -> Result<Graph, RdfError> {
    let mut stem = String::from("genid");
    while text.contains(&format!("_:{stem}")) {
        stem.push('x');
    }
    let mut parser = Parser {
        cur: Cursor::new(text),
        prefixes: BTreeMap::new(),
        graph: Graph::new(),
        stem,
        fresh: 0,
    };
    parser.document()?;
    let Parser { prefixes, mut graph, .. } = parser;
    for (p, ns) in prefixes {
        graph.set_prefix(p, ns);
    }
    Ok(graph)
}

struct Parser<'a> {
    cur: Cursor<'a>,
    prefixes: BTreeMap<String, String>,
    graph: Graph,
    stem: String,
    fresh: usize,
}

impl Parser<'_> {
    fn document(&mut self) -> Result<(), RdfError> {
        loop {
            self.cur.skip_ws_and_comments();
            if self.cur.at_end() {
                return Ok(());
            }
            if self.cur.starts_with("@prefix") {
                self.cur.eat("@prefix");
                self.prefix_decl(true)?;
            } else if self.cur.eat_keyword("PREFIX") {
                self.prefix_decl(false)?;
            } else if self.cur.starts_with("@base") || self.cur.eat_keyword("BASE") {
                return Err(self.unsupported("base directive"));
            } else {
                self.triples()?;
            }
        }
    }

    fn unsupported(&self, feature: &str) -> RdfError {
        RdfError::UnsupportedTurtle {
            line: self.cur.line(),
            feature: feature.to_string(),
        }
    }

    fn prefix_decl(&mut self, turtle_style: bool) -> Result<(), RdfError> {
        self.cur.skip_ws_and_comments();
        let name: String = self.cur.rest().chars().take_while(|&c| is_pn_char(c) || c == '.').collect();
        if name.ends_with('.') || name.starts_with(|c: char| !c.is_alphabetic()) && !name.is_empty() {
            return Err(self.cur.error("invalid prefix name"));
        }
        self.cur.eat(&name);
        self.cur.expect(":")?;
        self.cur.skip_ws_and_comments();
        let line = self.cur.line();
        let ns = self.cur.iri_ref()?;
        Iri::new(ns.clone()).map_err(|e| syntax(line, &ns, e))?;
        if turtle_style {
            self.cur.skip_ws_and_comments();
            self.cur.expect(".")?;
        }
        self.prefixes.insert(name, ns);
        Ok(())
    }

    fn triples(&mut self) -> Result<(), RdfError> {
        let anonymous_with_properties = self.cur.starts_with("[") && !self.empty_brackets_ahead();
        let subject = self.subject()?;
        self.cur.skip_ws_and_comments();
        if !(anonymous_with_properties && self.cur.starts_with(".")) {
            self.predicate_object_list(&subject)?;
            self.cur.skip_ws_and_comments();
        }
        if self.cur.eat(".") {
            Ok(())
        } else {
            Err(self.cur.error("expected `,`, `;` or `.`"))
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), RdfError> {
        loop {
            self.cur.skip_ws_and_comments();
            let predicate = self.verb()?;
            loop {
                self.cur.skip_ws_and_comments();
                let object = self.object()?;
                self.emit(subject.clone(), predicate.clone(), object)?;
                self.cur.skip_ws_and_comments();
                if !self.cur.eat(",") {
                    break;
                }
            }
            // `;` may repeat and may precede the end of the list
            let mut saw_semicolon = false;
            while self.cur.eat(";") {
                saw_semicolon = true;
                self.cur.skip_ws_and_comments();
            }
            if !saw_semicolon || self.cur.starts_with(".") || self.cur.starts_with("]") {
                return Ok(());
            }
        }
    }

    fn emit(&mut self, s: Term, p: Iri, o: Term) -> Result<(), RdfError> {
        let line = self.cur.line();
        let triple = Triple::new(s, p, o).map_err(|e| syntax(line, "", e))?;
        self.graph.insert(triple);
        Ok(())
    }

    fn fresh_blank(&mut self) -> Term {
        self.fresh += 1;
        Term::Blank(BlankNode::new(format!("{}{}", self.stem, self.fresh)).expect("generated label is valid"))
    }

    fn empty_brackets_ahead(&self) -> bool {
        self.cur.rest()[1..].trim_start().starts_with(']')
    }

    /// `[ ... ]`, with or without properties.
    fn blank_property_list(&mut self) -> Result<Term, RdfError> {
        self.cur.expect("[")?;
        let node = self.fresh_blank();
        self.cur.skip_ws_and_comments();
        if !self.cur.eat("]") {
            self.predicate_object_list(&node)?;
            self.cur.skip_ws_and_comments();
            self.cur.expect("]")?;
        }
        Ok(node)
    }

    /// `( ... )` as an `rdf:first`/`rdf:rest` chain; `()` is `rdf:nil`.
    fn collection(&mut self) -> Result<Term, RdfError> {
        self.cur.expect("(")?;
        let mut items = Vec::new();
        loop {
            self.cur.skip_ws_and_comments();
            if self.cur.eat(")") {
                break;
            }
            if self.cur.at_end() {
                return Err(self.cur.error("unterminated collection"));
            }
            items.push(self.object()?);
        }
        let nodes: Vec<Term> = items.iter().map(|_| self.fresh_blank()).collect();
        for (i, item) in items.into_iter().enumerate() {
            self.emit(nodes[i].clone(), rdf::first(), item)?;
            let rest = nodes.get(i + 1).cloned().unwrap_or_else(|| Term::Iri(rdf::nil()));
            self.emit(nodes[i].clone(), rdf::rest(), rest)?;
        }
        Ok(nodes.into_iter().next().unwrap_or_else(|| Term::Iri(rdf::nil())))
    }

    fn subject(&mut self) -> Result<Term, RdfError> {
        self.reject_unsupported()?;
        match self.cur.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.cur.starts_with("_:") => Ok(Term::Blank(self.blank()?)),
            Some('[') => self.blank_property_list(),
            Some('(') => self.collection(),
            Some('"' | '\'') => Err(self.cur.error("literal in subject position")),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => Err(self.cur.error("literal in subject position")),
            Some(_) => Ok(Term::Iri(self.prefixed_name()?)),
            None => Err(self.cur.error("expected subject")),
        }
    }

    fn verb(&mut self) -> Result<Iri, RdfError> {
        if self.cur.peek() == Some('a') && self.cur.peek_nth(1).is_none_or(|c| c.is_whitespace() || c == '<') {
            self.cur.bump();
            return Ok(rdf::type_());
        }
        match self.cur.peek() {
            Some('<') => self.iri_ref(),
            Some('"' | '\'' | '_' | '[' | '(') => Err(self.cur.error("expected IRI as predicate")),
            Some(_) => self.prefixed_name(),
            None => Err(self.cur.error("expected predicate")),
        }
    }

    fn object(&mut self) -> Result<Term, RdfError> {
        self.reject_unsupported()?;
        match self.cur.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.cur.starts_with("_:") => Ok(Term::Blank(self.blank()?)),
            Some('[') => self.blank_property_list(),
            Some('(') => self.collection(),
            Some('"' | '\'') => Ok(Term::Literal(self.literal()?)),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => Ok(Term::Literal(self.numeric()?)),
            Some(_) if self.boolean_ahead("true") => {
                self.cur.eat("true");
                Ok(Term::Literal(Literal::typed("true", xsd::boolean())))
            }
            Some(_) if self.boolean_ahead("false") => {
                self.cur.eat("false");
                Ok(Term::Literal(Literal::typed("false", xsd::boolean())))
            }
            Some(_) => Ok(Term::Iri(self.prefixed_name()?)),
            None => Err(self.cur.error("expected object")),
        }
    }

    fn boolean_ahead(&self, word: &str) -> bool {
        self.cur.starts_with(word)
            && self.cur.rest()[word.len()..]
                .chars()
                .next()
                .is_none_or(|c| !(is_pn_char(c) || c == ':'))
    }

    fn reject_unsupported(&self) -> Result<(), RdfError> {
        if self.cur.starts_with("<<") {
            Err(self.unsupported("quoted triple"))
        } else {
            Ok(())
        }
    }

    fn iri_ref(&mut self) -> Result<Iri, RdfError> {
        let line = self.cur.line();
        let text = self.cur.iri_ref()?;
        Iri::new(text.clone()).map_err(|e| syntax(line, &format!("<{text}>"), e))
    }

    fn blank(&mut self) -> Result<BlankNode, RdfError> {
        let label = self.cur.blank_label()?;
        BlankNode::new(label).map_err(|e| self.cur.error(e.to_string()))
    }

    fn prefixed_name(&mut self) -> Result<Iri, RdfError> {
        let line = self.cur.line();
        let token = self.cur.token();
        let prefix: String = self.cur.rest().chars().take_while(|&c| is_pn_char(c) || c == '.').collect();
        let prefix = prefix.trim_end_matches('.').to_string();
        if !self.cur.rest()[prefix.len()..].starts_with(':') {
            return Err(self.cur.error("expected IRI, prefixed name or literal"));
        }
        let Some(ns) = self.prefixes.get(&prefix).cloned() else {
            return Err(self.cur.error(format!("undeclared prefix `{prefix}:`")));
        };
        self.cur.eat(&prefix);
        self.cur.eat(":");
        let mut local = String::new();
        loop {
            match self.cur.peek() {
                Some(c) if is_pn_char(c) || c == ':' => {
                    local.push(c);
                    self.cur.bump();
                }
                // A dot belongs to the name only when more name characters follow.
                Some('.') if self.cur.peek_nth(1).is_some_and(|c| is_pn_char(c) || c == ':' || c == '%') => {
                    local.push('.');
                    self.cur.bump();
                }
                Some('%') => {
                    let hex: String = self.cur.rest().chars().skip(1).take(2).collect();
                    if hex.len() != 2 || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
                        return Err(self.cur.error("invalid percent escape in local name"));
                    }
                    local.push('%');
                    local.push_str(&hex);
                    self.cur.eat(&format!("%{hex}"));
                }
                Some('\\') => {
                    self.cur.bump();
                    match self.cur.bump() {
                        Some(c) if "_~.-!$&'()*+,;=/?#@%".contains(c) => local.push(c),
                        _ => return Err(self.cur.error("invalid escape in local name")),
                    }
                }
                _ => break,
            }
        }
        Iri::new(format!("{ns}{local}")).map_err(|e| syntax(line, &token, e))
    }

    fn literal(&mut self) -> Result<Literal, RdfError> {
        let quote = self.cur.peek().expect("caller checked quote");
        let long = self.cur.starts_with(&quote.to_string().repeat(3));
        let lexical = self.cur.string(quote, long)?;
        match self.cur.peek() {
            Some('@') => {
                let tag = self.cur.language_tag()?;
                Literal::lang(lexical, &tag).map_err(|e| self.cur.error(e.to_string()))
            }
            Some('^') => {
                self.cur.expect("^^")?;
                let datatype = if self.cur.peek() == Some('<') {
                    self.iri_ref()?
                } else {
                    self.prefixed_name()?
                };
                if datatype.as_str() == rdf::LANG_STRING {
                    return Err(self.cur.error("rdf:langString literal without language tag"));
                }
                Ok(Literal::typed(lexical, datatype))
            }
            _ => Ok(Literal::string(lexical)),
        }
    }

    fn numeric(&mut self) -> Result<Literal, RdfError> {
        let rest = self.cur.rest();
        let bytes = rest.as_bytes();
        let mut i = 0;
        if matches!(bytes.first(), Some(b'+' | b'-')) {
            i += 1;
        }
        let int_start = i;
        while bytes.get(i).is_some_and(u8::is_ascii_digit) {
            i += 1;
        }
        let int_digits = i - int_start;
        let mut frac_digits = 0;
        if bytes.get(i) == Some(&b'.') && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
            i += 1;
            while bytes.get(i).is_some_and(u8::is_ascii_digit) {
                i += 1;
                frac_digits += 1;
            }
        }
        let mut exponent = false;
        if matches!(bytes.get(i), Some(b'e' | b'E')) && (int_digits > 0 || frac_digits > 0) {
            let mut j = i + 1;
            if matches!(bytes.get(j), Some(b'+' | b'-')) {
                j += 1;
            }
            let exp_start = j;
            while bytes.get(j).is_some_and(u8::is_ascii_digit) {
                j += 1;
            }
            if j > exp_start {
                exponent = true;
                i = j;
            }
        }
        if int_digits == 0 && frac_digits == 0 {
            return Err(self.cur.error("invalid numeric literal"));
        }
        let lexical = rest[..i].to_string();
        self.cur.eat(&lexical);
        let datatype = if exponent {
            xsd::double()
        } else if frac_digits > 0 {
            xsd::decimal()
        } else {
            xsd::integer()
        };
        Ok(Literal::typed(lexical, datatype))
    }
}

fn syntax(line: usize, token: &str, err: RdfError) -> RdfError {
    RdfError::Syntax {
        line,
        token: token.to_string(),
        message: err.to_string(),
    }
}

fn is_pn_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

/// Writes Turtle grouped by subject. Only prefixes that are actually used are declared.
///
/// Subjects appear in N-Triples order; `rdf:type` comes first within a subject
/// and is written as `a`, remaining predicates sort by IRI, objects by their
/// N-Triples form.
pub fn write_turtle<'p>(graph: &Graph, prefixes: &[(&'p str, &'p str)]) -> String {
    // Predicate key: (not rdf:type, IRI), so `a` sorts first.
    type Objects<'g> = BTreeMap<(bool, &'g str), Vec<&'g Term>>;
    let mut by_subject: BTreeMap<String, (&Term, Objects)> = BTreeMap::new();
    for t in graph.iter() {
        let entry = by_subject
            .entry(t.subject().to_string())
            .or_insert_with(|| (t.subject(), BTreeMap::new()));
        let is_other = t.predicate().as_str() != rdf::TYPE;
        entry.1.entry((is_other, t.predicate().as_str())).or_default().push(t.object());
    }

    let mut used: BTreeMap<&'p str, &'p str> = BTreeMap::new();
    let mut body = String::new();
    let name = |iri: &Iri, used: &mut BTreeMap<&'p str, &'p str>| -> String {
        match shorten(iri.as_str(), prefixes) {
            Some((prefix, ns, local)) => {
                used.insert(prefix, ns);
                format!("{prefix}:{local}")
            }
            None => iri.to_string(),
        }
    };

    for (i, (subject, predicates)) in by_subject.values().enumerate() {
        if i > 0 {
            body.push('\n');
        }
        body.push_str(&match subject {
            Term::Iri(iri) => name(iri, &mut used),
            other => other.to_string(),
        });
        for (j, ((_, predicate), objects)) in predicates.iter().enumerate() {
            body.push_str(if j == 0 { " " } else { " ;\n    " });
            if *predicate == rdf::TYPE {
                body.push('a');
            } else {
                body.push_str(&name(&Iri::new_unchecked(*predicate), &mut used));
            }
            let mut rendered: Vec<(String, &Term)> = objects.iter().map(|o| (o.to_string(), *o)).collect();
            rendered.sort();
            for (k, (_, object)) in rendered.into_iter().enumerate() {
                body.push_str(if k == 0 { " " } else { ", " });
                match object {
                    Term::Iri(iri) => body.push_str(&name(iri, &mut used)),
                    Term::Blank(b) => body.push_str(&b.to_string()),
                    Term::Literal(lit) => {
                        body.push('"');
                        write_escaped(&mut body, lit.lexical()).expect("writing to a String");
                        body.push('"');
                        if let Some(lang) = lit.language() {
                            let _ = write!(body, "@{lang}");
                        } else if !lit.is_plain_string() {
                            body.push_str("^^");
                            body.push_str(&name(lit.datatype(), &mut used));
                        }
                    }
                }
            }
        }
        body.push_str(" .\n");
    }

    let mut out = String::new();
    for (prefix, ns) in &used {
        let _ = writeln!(out, "@prefix {prefix}: <{ns}> .");
    }
    if !used.is_empty() && !body.is_empty() {
        out.push('\n');
    }
    out.push_str(&body);
    out
}

/// Longest matching namespace whose remainder is a safe local name.
fn shorten<'p>(iri: &str, prefixes: &[(&'p str, &'p str)]) -> Option<(&'p str, &'p str, String)> {
    prefixes
        .iter()
        .filter(|(_, ns)| iri.starts_with(ns))
        .filter(|(_, ns)| is_safe_local(&iri[ns.len()..]))
        .max_by_key(|(p, ns)| (ns.len(), std::cmp::Reverse(*p)))
        .map(|(p, ns)| (*p, *ns, iri[ns.len()..].to_string()))
}

fn is_safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn prefix_expansion() {
        let g = parse_turtle("@prefix x: <http://x/> . x:a x:p x:b .").unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject(), &Term::Iri(iri("http://x/a")));
        assert_eq!(t.predicate(), &iri("http://x/p"));
        assert_eq!(t.object(), &Term::Iri(iri("http://x/b")));
        assert_eq!(g.prefixes().get("x").map(String::as_str), Some("http://x/"));
    }

    #[test]
    fn language_tagged_literal() {
        let g = parse_turtle("@prefix x: <http://x/> .\nx:a x:p \"w\"@de .").unwrap();
        let lit = g.iter().next().unwrap().object().as_literal().unwrap().clone();
        assert_eq!(lit.language(), Some("de"));
        assert_eq!(lit.lexical(), "w");
    }

    #[test]
    fn lists_and_shorthand() {
        let text = r#"
            PREFIX x: <http://x/>
            @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
            x:a a x:C ; x:p x:b , x:c ;
                x:n 42, -1.5, 1e3, true, "t"^^xsd:token, 'single', """long
text""" ;
            .
            _:n1 x:q x:a.b .
            x:d x:p x:e.
        "#;
        let g = parse_turtle(text).unwrap();
        assert_eq!(g.len(), 12);
        let a = Term::Iri(iri("http://x/a"));
        assert!(g.contains(&Triple::new(a.clone(), rdf::type_(), iri("http://x/C")).unwrap()));
        let n = iri("http://x/n");
        let values: Vec<_> = g.objects(&a, &n).cloned().collect();
        assert!(values.contains(&Term::Literal(Literal::typed("42", xsd::integer()))));
        assert!(values.contains(&Term::Literal(Literal::typed("-1.5", xsd::decimal()))));
        assert!(values.contains(&Term::Literal(Literal::typed("1e3", xsd::double()))));
        assert!(values.contains(&Term::Literal(Literal::typed("true", xsd::boolean()))));
        assert!(values.contains(&Term::Literal(Literal::string("long\ntext"))));
        assert!(g.contains(&Triple::new(BlankNode::new("n1").unwrap(), iri("http://x/q"), iri("http://x/a.b")).unwrap()));
        assert!(g.contains(&Triple::new(iri("http://x/d"), iri("http://x/p"), iri("http://x/e")).unwrap()));
    }

    #[test]
    fn unsupported_constructs_are_named() {
        for (text, feature) in [
            ("@prefix x: <http://x/> . << x:a x:p x:b >> x:q x:c .", "quoted triple"),
            ("@base <http://x/> .", "base directive"),
        ] {
            match parse_turtle(text) {
                Err(RdfError::UnsupportedTurtle { feature: f, .. }) => assert_eq!(f, feature),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn anonymous_nodes_and_collections() {
        let text = "@prefix x: <http://x/> .\n\
            x:a x:p [ x:q x:b ; x:r [] ] ; x:l ( x:b \"v\" ) , () .\n\
            [ x:q x:c ] .\n\
            [] x:q x:d .\n\
            _:genid1 x:q x:e .";
        let g = parse_turtle(text).unwrap();
        assert_eq!(g.len(), 12);
        let x = |s: &str| iri(&format!("http://x/{s}"));
        let b = |s: &str| Term::Blank(BlankNode::new(s).unwrap());
        // the explicit `_:genid1` pushes generated labels to another stem
        assert!(g.contains(&Triple::new(b("genid1"), x("q"), x("e")).unwrap()));
        assert!(g.contains(&Triple::new(x("a"), x("p"), b("genidx1")).unwrap()));
        assert!(g.contains(&Triple::new(b("genidx1"), x("r"), b("genidx2")).unwrap()));
        assert!(g.contains(&Triple::new(x("a"), x("l"), b("genidx3")).unwrap()));
        assert!(g.contains(&Triple::new(b("genidx3"), rdf::first(), x("b")).unwrap()));
        assert!(g.contains(&Triple::new(b("genidx3"), rdf::rest(), b("genidx4")).unwrap()));
        assert!(g.contains(&Triple::new(b("genidx4"), rdf::rest(), rdf::nil()).unwrap()));
        assert!(g.contains(&Triple::new(x("a"), x("l"), rdf::nil()).unwrap()));
        assert!(g.contains(&Triple::new(b("genidx5"), x("q"), x("c")).unwrap()));
        assert!(g.contains(&Triple::new(b("genidx6"), x("q"), x("d")).unwrap()));
        assert!(matches!(parse_turtle("<http://x/a> <http://x/p> [ <http://x/q> 1 ."), Err(RdfError::Syntax { .. })));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_turtle("y:a y:p y:b ."), Err(RdfError::Syntax { .. })));
        assert!(matches!(parse_turtle("<http://x/a> <http://x/p> <http://x/b>"), Err(RdfError::Syntax { .. })));
        assert!(matches!(parse_turtle("\"lit\" <http://x/p> <http://x/b> ."), Err(RdfError::Syntax { .. })));
        match parse_turtle("<http://x/a> <http://x/p> <http://x/b> .\n\n<http://x/a> <http://x/p> .") {
            Err(RdfError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn writer_layout() {
        let text = r#"
            @prefix x: <http://x/> .
            x:b x:q "v"@en, "5"^^<http://www.w3.org/2001/XMLSchema#integer> ; a x:C .
            x:a x:p <http://y/with space?>.
        "#;
        let err = parse_turtle(text);
        assert!(err.is_err());

        let text = r#"
            @prefix x: <http://x/> .
            x:b x:q "v"@en, "5"^^<http://www.w3.org/2001/XMLSchema#integer> ; a x:C .
            x:a x:p <http://y/z/w> .
        "#;
        let g = parse_turtle(text).unwrap();
        let out = write_turtle(&g, &[("x", "http://x/"), ("xsd", xsd::NS), ("unused", "http://unused/")]);
        let expected = "@prefix x: <http://x/> .\n@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n\nx:a x:p <http://y/z/w> .\n\nx:b a x:C ;\n    x:q \"5\"^^xsd:integer, \"v\"@en .\n";
        assert_eq!(out, expected);
        assert!(parse_turtle(&out).unwrap().same_triples(&g));
    }

    #[test]
    fn writer_without_prefixes() {
        let g: Graph = [Triple::new(iri("http://x/a"), iri("http://x/p"), Literal::string("a\"b")).unwrap()]
            .into_iter()
            .collect();
        assert_eq!(write_turtle(&g, &[]), "<http://x/a> <http://x/p> \"a\\\"b\" .\n");
        assert_eq!(write_turtle(&Graph::new(), &[("x", "http://x/")]), "");
    }
}
