//! JSON documents for images, families, functions, homotopies,
//! multifunctions and generator witnesses.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{FamilyFunction, FiniteFunction};
use crate::homotopy::HomotopyTable;
use crate::hyperspace::{FamilyKind, Subset, SubsetFamily, DEFAULT_HYPERSPACE_POINTS};
use crate::lattice::{Adjacency, DigitalImage, Point};
use crate::multivalued::{EgsWitness, MultiFunction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageDoc {
    pub dim: usize,
    pub adjacency: String,
    pub points: Vec<Point>,
}

impl ImageDoc {
    pub fn from_image(image: &DigitalImage) -> Self {
        ImageDoc {
            dim: image.dim(),
            adjacency: image.adjacency().to_string(),
            points: image.points().to_vec(),
        }
    }

    pub fn to_image(&self) -> Result<DigitalImage> {
        DigitalImage::new(self.dim, Adjacency::parse(&self.adjacency)?, self.points.clone())
    }
}

/// Image fields plus a kind and, for custom families, the member list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub dim: usize,
    pub adjacency: String,
    pub points: Vec<Point>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<Vec<Point>>>,
}

pub fn parse_kind(s: &str) -> Result<FamilyKind> {
    match s {
        "full" => Ok(FamilyKind::Full),
        "connected" => Ok(FamilyKind::Connected),
        "custom" => Ok(FamilyKind::Custom),
        other => Err(Error::Parse(format!("unknown family kind {other:?}"))),
    }
}

impl FamilyDoc {
    pub fn from_family(family: &SubsetFamily) -> Self {
        let image = ImageDoc::from_image(family.base());
        FamilyDoc {
            dim: image.dim,
            adjacency: image.adjacency,
            points: image.points,
            kind: family.kind().to_string(),
            members: (family.kind() == FamilyKind::Custom)
                .then(|| family.members().iter().map(|&s| family.points_of(s)).collect()),
        }
    }

    pub fn to_family(&self, max_points: usize) -> Result<SubsetFamily> {
        let base = ImageDoc {
            dim: self.dim,
            adjacency: self.adjacency.clone(),
            points: self.points.clone(),
        }
        .to_image()?;
        match (parse_kind(&self.kind)?, &self.members) {
            (FamilyKind::Custom, Some(members)) => {
                let members = members
                    .iter()
                    .map(|m| base.mask_of(m).map(Subset::from_mask))
                    .collect::<Result<Vec<_>>>()?;
                SubsetFamily::custom(Arc::new(base), members)
            }
            (FamilyKind::Custom, None) => Err(Error::Parse("custom family without members".into())),
            (kind, None) => SubsetFamily::of_kind(&base, kind, max_points),
            (kind, Some(_)) => Err(Error::Parse(format!("a {kind} family must not list members"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub domain: ImageDoc,
    pub codomain: ImageDoc,
    pub pairs: Vec<(Point, Point)>,
}

impl FunctionDoc {
    pub fn from_function(f: &FiniteFunction) -> Self {
        FunctionDoc {
            domain: ImageDoc::from_image(f.domain()),
            codomain: ImageDoc::from_image(f.codomain()),
            pairs: f.pairs(),
        }
    }

    pub fn to_function(&self) -> Result<FiniteFunction> {
        let domain = Arc::new(self.domain.to_image()?);
        let codomain = Arc::new(self.codomain.to_image()?);
        FiniteFunction::from_pairs(domain, codomain, &self.pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFunctionDoc {
    pub domain: FamilyDoc,
    pub codomain: FamilyDoc,
    pub pairs: Vec<(Vec<Point>, Vec<Point>)>,
}

impl FamilyFunctionDoc {
    pub fn from_family_function(map: &FamilyFunction) -> Self {
        let (d, c) = (map.domain(), map.codomain());
        FamilyFunctionDoc {
            domain: FamilyDoc::from_family(d),
            codomain: FamilyDoc::from_family(c),
            pairs: d
                .members()
                .iter()
                .zip(map.table())
                .map(|(&a, &b)| (d.points_of(a), c.points_of(c.member(b))))
                .collect(),
        }
    }

    pub fn to_family_function(&self, max_points: usize) -> Result<FamilyFunction> {
        let domain = self.domain.to_family(max_points)?;
        let codomain = self.codomain.to_family(max_points)?;
        let mut table = vec![None; domain.len()];
        for (a, b) in &self.pairs {
            let ia = domain
                .index_of(Subset::from_mask(domain.base().mask_of(a)?))
                .ok_or_else(|| Error::invalid("pair source is not a domain member"))?;
            let ib = codomain
                .index_of(Subset::from_mask(codomain.base().mask_of(b)?))
                .ok_or_else(|| Error::invalid("pair target is not a codomain member"))?;
            if table[ia].replace(ib).is_some() {
                return Err(Error::invalid(format!(
                    "member {} is assigned twice",
                    domain.label(domain.member(ia))
                )));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| Error::invalid(format!("member {} has no image", domain.label(domain.member(i))))))
            .collect::<Result<Vec<_>>>()?;
        FamilyFunction::new(domain, codomain, table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyDoc {
    pub m: usize,
    pub slices: Vec<FunctionDoc>,
}

impl HomotopyDoc {
    pub fn from_table(h: &HomotopyTable) -> Self {
        HomotopyDoc {
            m: h.m(),
            slices: (0..=h.m()).map(|t| FunctionDoc::from_function(&h.slice(t))).collect(),
        }
    }

    pub fn to_table(&self) -> Result<HomotopyTable> {
        if self.slices.len() != self.m + 1 {
            return Err(Error::Parse(format!(
                "homotopy with m = {} needs {} slices, found {}",
                self.m,
                self.m + 1,
                self.slices.len()
            )));
        }
        let path = self
            .slices
            .iter()
            .map(FunctionDoc::to_function)
            .collect::<Result<Vec<_>>>()?;
        HomotopyTable::from_path(&path)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiFunctionDoc {
    pub domain: ImageDoc,
    pub codomain: ImageDoc,
    pub pairs: Vec<(Point, Vec<Point>)>,
}

impl MultiFunctionDoc {
    pub fn from_multifunction(f: &MultiFunction) -> Self {
        MultiFunctionDoc {
            domain: ImageDoc::from_image(f.domain()),
            codomain: ImageDoc::from_image(f.codomain()),
            pairs: f.pairs(),
        }
    }

    pub fn to_multifunction(&self) -> Result<MultiFunction> {
        let domain = Arc::new(self.domain.to_image()?);
        let codomain = Arc::new(self.codomain.to_image()?);
        MultiFunction::from_pairs(domain, codomain, &self.pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EgsWitnessDoc {
    pub r: usize,
    pub generator: FunctionDoc,
}

impl EgsWitnessDoc {
    pub fn from_witness(w: &EgsWitness) -> Self {
        EgsWitnessDoc {
            r: w.r,
            generator: FunctionDoc::from_function(&w.generator),
        }
    }

    pub fn to_witness(&self) -> Result<EgsWitness> {
        Ok(EgsWitness {
            r: self.r,
            generator: self.generator.to_function()?,
        })
    }
}

/// Deserializes a document; the error names the document kind and the
/// line and column of the fault.
pub fn from_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        let full = e.to_string();
        let msg = full.trim_end_matches(&format!(" at line {line} column {column}"));
        Error::Parse(format!("{what} document, line {line} column {column}: {msg}"))
    })
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

pub fn read_image(text: &str) -> Result<DigitalImage> {
    from_json::<ImageDoc>(text, "image")?.to_image()
}

pub fn write_image(image: &DigitalImage) -> String {
    to_json(&ImageDoc::from_image(image))
}

pub fn read_family(text: &str) -> Result<SubsetFamily> {
    from_json::<FamilyDoc>(text, "family")?.to_family(DEFAULT_HYPERSPACE_POINTS)
}

pub fn write_family(family: &SubsetFamily) -> String {
    to_json(&FamilyDoc::from_family(family))
}

pub fn read_function(text: &str) -> Result<FiniteFunction> {
    from_json::<FunctionDoc>(text, "function")?.to_function()
}

pub fn write_function(f: &FiniteFunction) -> String {
    to_json(&FunctionDoc::from_function(f))
}

pub fn read_family_function(text: &str) -> Result<FamilyFunction> {
    from_json::<FamilyFunctionDoc>(text, "family function")?.to_family_function(DEFAULT_HYPERSPACE_POINTS)
}

pub fn write_family_function(map: &FamilyFunction) -> String {
    to_json(&FamilyFunctionDoc::from_family_function(map))
}

pub fn read_homotopy(text: &str) -> Result<HomotopyTable> {
    from_json::<HomotopyDoc>(text, "homotopy")?.to_table()
}

pub fn write_homotopy(h: &HomotopyTable) -> String {
    to_json(&HomotopyDoc::from_table(h))
}

pub fn read_multifunction(text: &str) -> Result<MultiFunction> {
    from_json::<MultiFunctionDoc>(text, "multifunction")?.to_multifunction()
}

pub fn write_multifunction(f: &MultiFunction) -> String {
    to_json(&MultiFunctionDoc::from_multifunction(f))
}

pub fn read_egs_witness(text: &str) -> Result<EgsWitness> {
    from_json::<EgsWitnessDoc>(text, "generator witness")?.to_witness()
}

pub fn write_egs_witness(w: &EgsWitness) -> String {
    to_json(&EgsWitnessDoc::from_witness(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy;

    #[test]
    fn image_round_trip() {
        let text = r#"{"dim": 2, "adjacency": "c2", "points": [[1,1],[0,0],[0,1]]}"#;
        let img = read_image(text).unwrap();
        assert_eq!(img.len(), 3);
        assert_eq!(read_image(&write_image(&img)).unwrap(), img);
    }

    #[test]
    fn rejects_bad_documents() {
        let dup = r#"{"dim": 1, "adjacency": "c1", "points": [[0],[0]]}"#;
        assert!(matches!(read_image(dup), Err(Error::InvalidInput(_))));
        let broken = "{\"dim\": 1,\n \"adjacency\": \"c1\",\n \"points\": [[0],}";
        match read_image(broken) {
            Err(Error::Parse(msg)) => assert!(msg.contains("line 3"), "{msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_adj = r#"{"dim": 1, "adjacency": "c2", "points": [[0]]}"#;
        assert!(read_image(bad_adj).is_err());
    }

    #[test]
    fn function_documents_round_trip() {
        let x = Arc::new(DigitalImage::interval(0, 2).unwrap());
        let f = FiniteFunction::from_fn(x.clone(), x.clone(), |p| (2 - p.coords()[0]).into()).unwrap();
        assert_eq!(read_function(&write_function(&f)).unwrap(), f);

        let fam = SubsetFamily::of_kind(&x, FamilyKind::Connected, 24).unwrap();
        let fstar = crate::functions::induced_map(&f, &fam, 24).unwrap();
        assert_eq!(read_family_function(&write_family_function(&fstar)).unwrap(), fstar);

        let custom = fam.filter(|s| s.len() == 1).unwrap();
        assert_eq!(read_family(&write_family(&custom)).unwrap(), custom);

        let h = homotopy::contraction(&x, homotopy::Flavor::Phi, None, 10_000).unwrap().unwrap();
        assert_eq!(read_homotopy(&write_homotopy(&h)).unwrap(), h);
    }

    #[test]
    fn multifunction_round_trip() {
        let text = r#"{
            "domain": {"dim": 1, "adjacency": "c1", "points": [[0],[1]]},
            "codomain": {"dim": 1, "adjacency": "c1", "points": [[0],[1],[2]]},
            "pairs": [[[0], [[0]]], [[1], [[1],[2]]]]
        }"#;
        let f = read_multifunction(text).unwrap();
        assert_eq!(read_multifunction(&write_multifunction(&f)).unwrap(), f);
        let w = crate::multivalued::is_egs_continuous(&f, 3, Default::default()).unwrap().unwrap();
        let back = read_egs_witness(&write_egs_witness(&w)).unwrap();
        assert!(crate::multivalued::generates(&f, &back));
    }
}
