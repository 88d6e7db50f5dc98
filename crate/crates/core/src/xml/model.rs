use std::collections::{BTreeSet, HashSet};
use std::fmt;

use roxmltree::{Document, Node};

use super::XmlError;
use crate::rdf::vocab::xsd;
use crate::rdf::Iri;

const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema";
const XSI_NS: &str = "http://www.w3.org/2001/XMLSchema-instance";
const XML_NS: &str = "http://www.w3.org/XML/1998/namespace";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpleType {
    String,
    Integer,
    Decimal,
    Boolean,
    Date,
}

impl SimpleType {
    fn from_xsd_local(name: &str) -> Option<Self> {
        Some(match name {
            "string" => SimpleType::String,
            "integer" => SimpleType::Integer,
            "decimal" => SimpleType::Decimal,
            "boolean" => SimpleType::Boolean,
            "date" => SimpleType::Date,
            _ => return None,
        })
    }

    pub fn datatype(self) -> Iri {
        match self {
            SimpleType::String => xsd::string(),
            SimpleType::Integer => xsd::integer(),
            SimpleType::Decimal => xsd::decimal(),
            SimpleType::Boolean => xsd::boolean(),
            SimpleType::Date => xsd::date(),
        }
    }

    /// The literal lexical form for raw XML text, or `None` when the text is
    /// not a valid value of this type. Strings are kept verbatim; other types
    /// have surrounding whitespace removed.
    pub fn lexical_form(self, raw: &str) -> Option<String> {
        if self == SimpleType::String {
            return Some(raw.to_string());
        }
        let v = raw.trim();
        let ok = match self {
            SimpleType::String => true,
            SimpleType::Integer => {
                let digits = v.strip_prefix(['+', '-']).unwrap_or(v);
                !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
            }
            SimpleType::Decimal => {
                let body = v.strip_prefix(['+', '-']).unwrap_or(v);
                let (int, frac) = body.split_once('.').unwrap_or((body, ""));
                (!int.is_empty() || !frac.is_empty())
                    && int.bytes().all(|b| b.is_ascii_digit())
                    && frac.bytes().all(|b| b.is_ascii_digit())
                    && body != "."
            }
            SimpleType::Boolean => matches!(v, "true" | "false" | "1" | "0"),
            SimpleType::Date => is_valid_date(v),
        };
        ok.then(|| v.to_string())
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SimpleType::String => "string",
            SimpleType::Integer => "integer",
            SimpleType::Decimal => "decimal",
            SimpleType::Boolean => "boolean",
            SimpleType::Date => "date",
        };
        f.write_str(name)
    }
}

/// `YYYY-MM-DD` with a real calendar day, optionally followed by `Z` or `±hh:mm`.
fn is_valid_date(v: &str) -> bool {
    let (date, zone) = if let Some(d) = v.strip_suffix('Z') {
        (d, "")
    } else if v.len() > 10 && matches!(v.as_bytes()[10], b'+' | b'-') {
        (&v[..10], &v[10..])
    } else {
        (v, "")
    };
    if !zone.is_empty() {
        let b = zone.as_bytes();
        let ok = b.len() == 6
            && b[3] == b':'
            && [1, 2, 4, 5].iter().all(|&i| b[i].is_ascii_digit())
            && zone[1..3].parse::<u32>().is_ok_and(|h| h <= 14)
            && zone[4..6].parse::<u32>().is_ok_and(|m| m < 60);
        if !ok {
            return false;
        }
    }
    let parts: Vec<&str> = date.split('-').collect();
    let [y, m, d] = parts.as_slice() else {
        return false;
    };
    if y.len() != 4 || m.len() != 2 || d.len() != 2 {
        return false;
    }
    let (Ok(year), Ok(month), Ok(day)) = (y.parse::<u32>(), m.parse::<u32>(), d.parse::<u32>()) else {
        return false;
    };
    let leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    let days = match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if leap => 29,
        2 => 28,
        _ => return false,
    };
    (1..=days).contains(&day)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxOccurs {
    Bounded(u32),
    Unbounded,
}

impl MaxOccurs {
    pub fn allows(self, count: u32) -> bool {
        match self {
            MaxOccurs::Bounded(max) => count <= max,
            MaxOccurs::Unbounded => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementRef {
    pub name: String,
    pub min: u32,
    pub max: MaxOccurs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttrDecl {
    pub name: String,
    pub ty: SimpleType,
    pub required: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Content {
    Complex {
        children: Vec<ElementRef>,
        attributes: Vec<AttrDecl>,
    },
    Simple(SimpleType),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementDecl {
    pub name: String,
    pub content: Content,
}

impl ElementDecl {
    pub fn is_complex(&self) -> bool {
        matches!(self.content, Content::Complex { .. })
    }
}

/// The supported schema subset: flat top-level element declarations whose
/// complex content is a sequence of element references plus attributes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XmlSchemaModel {
    pub target_namespace: String,
    pub elements: Vec<ElementDecl>,
}

impl XmlSchemaModel {
    pub fn element(&self, name: &str) -> Option<&ElementDecl> {
        self.elements.iter().find(|e| e.name == name)
    }

    /// Checks unique names, resolvable references and `min <= max`.
    pub fn validate(&self) -> Result<(), XmlError> {
        let mut seen = HashSet::new();
        for e in &self.elements {
            if !seen.insert(e.name.as_str()) {
                return Err(XmlError::Schema(format!("element `{}` declared more than once", e.name)));
            }
        }
        let mut unresolved = BTreeSet::new();
        for e in &self.elements {
            if let Content::Complex { children, attributes } = &e.content {
                for child in children {
                    if !seen.contains(child.name.as_str()) {
                        unresolved.insert(child.name.clone());
                    }
                    if let MaxOccurs::Bounded(max) = child.max {
                        if child.min > max {
                            return Err(XmlError::Schema(format!(
                                "reference to `{}` in `{}` has minOccurs {} > maxOccurs {}",
                                child.name, e.name, child.min, max
                            )));
                        }
                    }
                }
                let mut attrs = HashSet::new();
                for a in attributes {
                    if !attrs.insert(a.name.as_str()) {
                        return Err(XmlError::Schema(format!("attribute `{}` declared twice on `{}`", a.name, e.name)));
                    }
                }
            }
        }
        if !unresolved.is_empty() {
            let names: Vec<String> = unresolved.into_iter().collect();
            return Err(XmlError::Schema(format!("unresolved element references: {}", names.join(", "))));
        }
        Ok(())
    }
}

/// One element of an instance document. Names are local names; the namespace
/// is kept separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XmlElement {
    pub name: String,
    pub namespace: Option<String>,
    pub attributes: Vec<XmlAttribute>,
    pub children: Vec<XmlElement>,
    /// Concatenated direct text content.
    pub text: String,
    pub line: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XmlAttribute {
    pub name: String,
    pub namespace: Option<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XmlDocument {
    pub root: XmlElement,
}

fn parse_xml(text: &str) -> Result<Document<'_>, XmlError> {
    Document::parse(text).map_err(|e| {
        let pos = e.pos();
        XmlError::Syntax {
            line: pos.row,
            column: pos.col,
            message: e.to_string(),
        }
    })
}

fn line_of(node: Node<'_, '_>) -> u32 {
    node.document().text_pos_at(node.range().start).row
}

fn unsupported(node: Node<'_, '_>, construct: impl Into<String>) -> XmlError {
    XmlError::Unsupported {
        construct: construct.into(),
        line: line_of(node),
    }
}

fn is_xsd(node: Node<'_, '_>, local: &str) -> bool {
    node.is_element() && node.tag_name().namespace() == Some(XSD_NS) && node.tag_name().name() == local
}

/// Element children, skipping `xs:annotation`.
fn xsd_children<'a, 'input>(node: Node<'a, 'input>) -> impl Iterator<Item = Node<'a, 'input>> {
    node.children().filter(|c| c.is_element() && !is_xsd(*c, "annotation"))
}

fn describe(node: Node<'_, '_>) -> String {
    match node.tag_name().namespace() {
        Some(XSD_NS) => format!("xs:{}", node.tag_name().name()),
        _ => node.tag_name().name().to_string(),
    }
}

fn check_attributes(node: Node<'_, '_>, allowed: &[&str]) -> Result<(), XmlError> {
    for attr in node.attributes() {
        if attr.namespace().is_some() {
            continue;
        }
        if !allowed.contains(&attr.name()) {
            return Err(unsupported(node, format!("attribute `{}` on {}", attr.name(), describe(node))));
        }
    }
    Ok(())
}

fn resolve_simple_type(node: Node<'_, '_>, qname: &str) -> Result<SimpleType, XmlError> {
    let (prefix, local) = match qname.split_once(':') {
        Some((p, l)) => (Some(p), l),
        None => (None, qname),
    };
    let ns = node.lookup_namespace_uri(prefix);
    if ns == Some(XSD_NS) {
        if let Some(ty) = SimpleType::from_xsd_local(local) {
            return Ok(ty);
        }
        return Err(unsupported(node, format!("simple type `{qname}`")));
    }
    Err(unsupported(node, format!("named type reference `{qname}`")))
}

fn parse_occurs(node: Node<'_, '_>, attr: &str) -> Result<Option<u32>, XmlError> {
    match node.attribute(attr) {
        None => Ok(None),
        Some("unbounded") if attr == "maxOccurs" => Ok(Some(u32::MAX)),
        Some(v) => v
            .trim()
            .parse::<u32>()
            .map(Some)
            .map_err(|_| XmlError::Schema(format!("invalid {attr} value `{v}` on line {}", line_of(node)))),
    }
}

/// Parses the supported XML Schema subset.
pub fn parse_schema(text: &str) -> Result<XmlSchemaModel, XmlError> {
    let doc = parse_xml(text)?;
    let root = doc.root_element();
    if !is_xsd(root, "schema") {
        return Err(XmlError::Schema(format!("root element is `{}`, expected xs:schema", root.tag_name().name())));
    }
    let target_namespace = root.attribute("targetNamespace").unwrap_or("").to_string();
    let mut elements = Vec::new();
    for node in xsd_children(root) {
        if !is_xsd(node, "element") {
            return Err(unsupported(node, describe(node)));
        }
        elements.push(parse_element_decl(node, &target_namespace)?);
    }
    Ok(XmlSchemaModel {
        target_namespace,
        elements,
    })
}

fn parse_element_decl(node: Node<'_, '_>, target_ns: &str) -> Result<ElementDecl, XmlError> {
    check_attributes(node, &["name", "type", "id"])?;
    let name = node
        .attribute("name")
        .ok_or_else(|| unsupported(node, "top-level xs:element without name"))?
        .to_string();
    let mut body = xsd_children(node);
    let complex = body.next();
    if let Some(extra) = body.next() {
        return Err(unsupported(extra, describe(extra)));
    }
    let content = match (node.attribute("type"), complex) {
        (Some(ty), None) => Content::Simple(resolve_simple_type(node, ty)?),
        (None, Some(ct)) if is_xsd(ct, "complexType") => parse_complex_type(ct, target_ns)?,
        (None, Some(other)) => return Err(unsupported(other, describe(other))),
        (Some(_), Some(_)) => return Err(unsupported(node, "xs:element with both type and inline type")),
        (None, None) => return Err(unsupported(node, "xs:element without type")),
    };
    Ok(ElementDecl { name, content })
}

fn parse_complex_type(node: Node<'_, '_>, target_ns: &str) -> Result<Content, XmlError> {
    check_attributes(node, &["id"])?;
    let mut children = Vec::new();
    let mut attributes = Vec::new();
    for (i, part) in xsd_children(node).enumerate() {
        if is_xsd(part, "sequence") && i == 0 {
            check_attributes(part, &["id"])?;
            for item in xsd_children(part) {
                if !is_xsd(item, "element") {
                    return Err(unsupported(item, format!("{} inside xs:sequence", describe(item))));
                }
                children.push(parse_element_ref(item, target_ns)?);
            }
        } else if is_xsd(part, "attribute") {
            attributes.push(parse_attribute(part)?);
        } else {
            return Err(unsupported(part, describe(part)));
        }
    }
    Ok(Content::Complex { children, attributes })
}

fn parse_element_ref(node: Node<'_, '_>, target_ns: &str) -> Result<ElementRef, XmlError> {
    let Some(reference) = node.attribute("ref") else {
        return Err(unsupported(node, "local element declaration (use ref to a top-level element)"));
    };
    check_attributes(node, &["ref", "minOccurs", "maxOccurs", "id"])?;
    let (prefix, local) = match reference.split_once(':') {
        Some((p, l)) => (Some(p), l),
        None => (None, reference),
    };
    let ns = node.lookup_namespace_uri(prefix).unwrap_or("");
    if ns != target_ns {
        return Err(unsupported(node, format!("reference `{reference}` outside the target namespace")));
    }
    let min = parse_occurs(node, "minOccurs")?.unwrap_or(1);
    let max = match parse_occurs(node, "maxOccurs")? {
        None => MaxOccurs::Bounded(1),
        Some(u32::MAX) => MaxOccurs::Unbounded,
        Some(n) => MaxOccurs::Bounded(n),
    };
    Ok(ElementRef {
        name: local.to_string(),
        min,
        max,
    })
}

fn parse_attribute(node: Node<'_, '_>) -> Result<AttrDecl, XmlError> {
    check_attributes(node, &["name", "type", "use", "id"])?;
    let name = node
        .attribute("name")
        .ok_or_else(|| unsupported(node, "xs:attribute without name"))?
        .to_string();
    let ty = match node.attribute("type") {
        Some(ty) => resolve_simple_type(node, ty)?,
        None => return Err(unsupported(node, "xs:attribute without type")),
    };
    let required = match node.attribute("use") {
        None | Some("optional") => false,
        Some("required") => true,
        Some(other) => return Err(unsupported(node, format!("attribute use `{other}`"))),
    };
    Ok(AttrDecl { name, ty, required })
}

/// Parses an instance document into its element tree. Namespace prefixes are
/// resolved and stripped; `xsi:` and `xml:` attributes are dropped.
pub fn parse_document(text: &str) -> Result<XmlDocument, XmlError> {
    let doc = parse_xml(text)?;
    Ok(XmlDocument {
        root: build_element(doc.root_element()),
    })
}

fn build_element(node: Node<'_, '_>) -> XmlElement {
    let mut text = String::new();
    let mut children = Vec::new();
    for child in node.children() {
        if child.is_element() {
            children.push(build_element(child));
        } else if child.is_text() {
            text.push_str(child.text().unwrap_or(""));
        }
    }
    let attributes = node
        .attributes()
        .filter(|a| !matches!(a.namespace(), Some(XSI_NS | XML_NS)))
        .map(|a| XmlAttribute {
            name: a.name().to_string(),
            namespace: a.namespace().map(str::to_string),
            value: a.value().to_string(),
        })
        .collect();
    XmlElement {
        name: node.tag_name().name().to_string(),
        namespace: node.tag_name().namespace().map(str::to_string),
        attributes,
        children,
        text,
        line: line_of(node),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"<xs:schema xmlns:xs="http://www.w3.org/2001/XMLSchema" targetNamespace="urn:t">
        <xs:element name="name" type="xs:string"/>
    </xs:schema>"#;

    #[test]
    fn minimal_schema() {
        let s = parse_schema(MINIMAL).unwrap();
        assert_eq!(s.target_namespace, "urn:t");
        assert_eq!(
            s.elements,
            vec![ElementDecl {
                name: "name".into(),
                content: Content::Simple(SimpleType::String)
            }]
        );
    }

    #[test]
    fn complex_schema() {
        let text = r#"<schema xmlns="http://www.w3.org/2001/XMLSchema" xmlns:t="urn:t" targetNamespace="urn:t">
            <element name="compound">
              <annotation><documentation>a substance</documentation></annotation>
              <complexType>
                <sequence>
                  <element ref="t:name"/>
                  <element ref="t:mass" minOccurs="0" maxOccurs="unbounded"/>
                </sequence>
                <attribute name="id" type="string" use="required"/>
              </complexType>
            </element>
            <element name="name" type="string"/>
            <element name="mass" type="decimal"/>
        </schema>"#;
        let s = parse_schema(text).unwrap();
        s.validate().unwrap();
        let Content::Complex { children, attributes } = &s.element("compound").unwrap().content else {
            panic!("compound should be complex");
        };
        assert_eq!(children[1], ElementRef { name: "mass".into(), min: 0, max: MaxOccurs::Unbounded });
        assert_eq!(attributes[0], AttrDecl { name: "id".into(), ty: SimpleType::String, required: true });
    }

    #[test]
    fn unsupported_constructs() {
        let wrap = |body: &str| {
            format!(r#"<xs:schema xmlns:xs="http://www.w3.org/2001/XMLSchema" targetNamespace="urn:t" xmlns:t="urn:t">{body}</xs:schema>"#)
        };
        let cases = [
            (r#"<xs:element name="a"><xs:complexType><xs:choice/></xs:complexType></xs:element>"#, "xs:choice"),
            (r#"<xs:simpleType name="x"/>"#, "xs:simpleType"),
            (r#"<xs:element name="a" type="xs:double"/>"#, "simple type `xs:double`"),
            (r#"<xs:element name="a" type="t:Foo"/>"#, "named type reference `t:Foo`"),
            (
                r#"<xs:element name="a"><xs:complexType><xs:sequence><xs:element name="b" type="xs:string"/></xs:sequence></xs:complexType></xs:element>"#,
                "local element declaration",
            ),
            (r#"<xs:element name="a" substitutionGroup="t:b" type="xs:string"/>"#, "attribute `substitutionGroup`"),
        ];
        for (body, construct) in cases {
            match parse_schema(&wrap(body)) {
                Err(XmlError::Unsupported { construct: c, .. }) => assert!(c.contains(construct), "{c} vs {construct}"),
                other => panic!("{body}: {other:?}"),
            }
        }
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_schema("<xs:schema>\n  <oops>\n</xs:schema>") {
            Err(XmlError::Syntax { line, .. }) => assert!(line >= 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn validation_errors() {
        let s = XmlSchemaModel {
            target_namespace: String::new(),
            elements: vec![ElementDecl {
                name: "a".into(),
                content: Content::Complex {
                    children: vec![
                        ElementRef { name: "zeta".into(), min: 1, max: MaxOccurs::Bounded(1) },
                        ElementRef { name: "beta".into(), min: 1, max: MaxOccurs::Bounded(1) },
                    ],
                    attributes: vec![],
                },
            }],
        };
        match s.validate() {
            Err(XmlError::Schema(msg)) => assert!(msg.contains("beta, zeta"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn document_prefixes_are_stripped() {
        let doc = parse_document(
            r#"<t:compound xmlns:t="urn:t" xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" xsi:schemaLocation="urn:t x.xsd" id="c1">
                 <t:name>water</t:name>
               </t:compound>"#,
        )
        .unwrap();
        assert_eq!(doc.root.name, "compound");
        assert_eq!(doc.root.namespace.as_deref(), Some("urn:t"));
        assert_eq!(doc.root.attributes.len(), 1);
        assert_eq!(doc.root.children[0].name, "name");
        assert_eq!(doc.root.children[0].text, "water");
    }

    #[test]
    fn lexical_forms() {
        use SimpleType::*;
        assert_eq!(Integer.lexical_form(" 42 ").as_deref(), Some("42"));
        assert_eq!(Integer.lexical_form("abc"), None);
        assert_eq!(Integer.lexical_form("-"), None);
        assert_eq!(Decimal.lexical_form("18.015").as_deref(), Some("18.015"));
        assert_eq!(Decimal.lexical_form(".5").as_deref(), Some(".5"));
        assert_eq!(Decimal.lexical_form("."), None);
        assert_eq!(Decimal.lexical_form("1e3"), None);
        assert_eq!(Boolean.lexical_form("true").as_deref(), Some("true"));
        assert_eq!(Boolean.lexical_form("yes"), None);
        assert_eq!(Date.lexical_form("2024-02-29").as_deref(), Some("2024-02-29"));
        assert_eq!(Date.lexical_form("2023-02-29"), None);
        assert_eq!(Date.lexical_form("2023-13-01"), None);
        assert_eq!(Date.lexical_form("2023-01-01Z").as_deref(), Some("2023-01-01Z"));
        assert_eq!(Date.lexical_form("2023-01-01+02:00").as_deref(), Some("2023-01-01+02:00"));
        assert_eq!(String.lexical_form(" padded ").as_deref(), Some(" padded "));
    }
}
