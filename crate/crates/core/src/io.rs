//! JSON documents for images, groups, digital topological groups and maps.
//!
//! Output is normalized (edges as sorted pairs `i < j`, pretty-printed, one
//! trailing newline), so loading and re-emitting a document reproduces it
//! byte for byte.

use serde::{Deserialize, Serialize};

use crate::dtg::Dtg;
use crate::error::{Error, Result};
use crate::groups::{validate_group, FiniteGroup};
use crate::lattice::{Adjacency, DigitalImage, NpLevel, Point};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum AdjacencyFile {
    Cu { u: usize },
    Explicit { edges: Vec<(usize, usize)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageFile {
    pub dimension: usize,
    pub points: Vec<Vec<i64>>,
    pub adjacency: AdjacencyFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DtgFile {
    pub image: ImageFile,
    pub group: GroupFile,
    #[serde(default)]
    pub claimed_level: Option<NpLevel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomFile {
    pub map: Vec<usize>,
}

/// A loaded digital topological group with optional element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DtgDocument {
    pub dtg: Dtg,
    pub names: Option<Vec<String>>,
}

fn schema(field: &str, message: impl ToString) -> Error {
    Error::Schema {
        field: field.into(),
        message: message.to_string(),
    }
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| schema(what, e))
}

fn render<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

impl From<&DigitalImage> for ImageFile {
    fn from(image: &DigitalImage) -> Self {
        let adjacency = match image.adjacency() {
            Adjacency::Cu(u) => AdjacencyFile::Cu { u: *u },
            Adjacency::Explicit(edges) => AdjacencyFile::Explicit {
                edges: edges.iter().copied().collect(),
            },
        };
        ImageFile {
            dimension: image.dimension(),
            points: image.points().iter().map(|p| p.coords().to_vec()).collect(),
            adjacency,
        }
    }
}

fn image_from_file(file: ImageFile, prefix: &str) -> Result<DigitalImage> {
    let field = |name: &str| format!("{prefix}{name}");
    let n = file.points.len();
    let adjacency = match file.adjacency {
        AdjacencyFile::Cu { u } => Adjacency::Cu(u),
        AdjacencyFile::Explicit { edges } => {
            if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= n || j >= n) {
                return Err(schema(
                    &field("adjacency.edges"),
                    format!("edge [{i}, {j}] refers to a point outside 0..{n}"),
                ));
            }
            Adjacency::explicit(edges).map_err(|e| schema(&field("adjacency.edges"), e))?
        }
    };
    let points = file.points.into_iter().map(Point::from).collect();
    DigitalImage::new(file.dimension, points, adjacency).map_err(|e| {
        let name = match e {
            Error::AdjacencyOutOfRange { .. } => "adjacency.u",
            Error::InvalidArgument(ref m) if m.contains("dimension") => "dimension",
            _ => "points",
        };
        schema(&field(name), e)
    })
}

fn group_from_file(file: GroupFile, prefix: &str) -> Result<(FiniteGroup, Option<Vec<String>>)> {
    let field = |name: &str| format!("{prefix}{name}");
    if file.order != file.table.len() {
        return Err(schema(
            &field("order"),
            format!("order {} but the table has {} rows", file.order, file.table.len()),
        ));
    }
    if let Some(names) = &file.names {
        if names.len() != file.order {
            return Err(schema(
                &field("names"),
                format!("{} names for {} elements", names.len(), file.order),
            ));
        }
    }
    let group = validate_group(&file.table).map_err(|e| schema(&field("table"), e))?;
    Ok((group, file.names))
}

impl From<&FiniteGroup> for GroupFile {
    fn from(group: &FiniteGroup) -> Self {
        GroupFile {
            order: group.order(),
            table: group.rows(),
            names: None,
        }
    }
}

pub fn load_image(text: &str) -> Result<DigitalImage> {
    image_from_file(parse(text, "image document")?, "")
}

pub fn image_to_json(image: &DigitalImage) -> String {
    render(&ImageFile::from(image))
}

pub fn load_group(text: &str) -> Result<(FiniteGroup, Option<Vec<String>>)> {
    group_from_file(parse(text, "group document")?, "")
}

pub fn group_to_json(group: &FiniteGroup, names: Option<&[String]>) -> String {
    let mut file = GroupFile::from(group);
    file.names = names.map(<[String]>::to_vec);
    render(&file)
}

/// Loads a DTG document and re-verifies it. A claimed level that does not
/// verify is rejected.
pub fn load_dtg(text: &str) -> Result<DtgDocument> {
    let file: DtgFile = parse(text, "dtg document")?;
    let image = image_from_file(file.image, "image.")?;
    let (group, names) = group_from_file(file.group, "group.")?;
    if image.len() != group.order() {
        return Err(schema(
            "group.order",
            format!("{} elements for {} points", group.order(), image.len()),
        ));
    }
    let dtg = Dtg::new(image, group)?;
    if let Some(claim) = file.claimed_level {
        if dtg.level() < Some(claim) {
            let actual = dtg.level().map_or("none".to_string(), |l| l.to_string());
            return Err(schema(
                "claimed_level",
                format!("claimed {claim} but the structure verifies at {actual}"),
            ));
        }
    }
    Ok(DtgDocument { dtg, names })
}

/// Emits a DTG with its verified level as the claim.
pub fn dtg_to_json(dtg: &Dtg, names: Option<&[String]>) -> String {
    let mut group = GroupFile::from(dtg.group());
    group.names = names.map(<[String]>::to_vec);
    render(&DtgFile {
        image: ImageFile::from(dtg.image()),
        group,
        claimed_level: dtg.level(),
    })
}

pub fn load_hom(text: &str) -> Result<Vec<usize>> {
    Ok(parse::<HomFile>(text, "hom document")?.map)
}

pub fn hom_to_json(map: &[usize]) -> String {
    render(&HomFile { map: map.to_vec() })
}

/// Pretty JSON with a trailing newline, for reports.
pub fn to_json<T: Serialize>(value: &T) -> String {
    render(value)
}
