//! JSON interchange formats. Frames travel as labeled cover relations
//! (any relation whose reflexive-transitive closure is the order is
//! accepted), congruences as nucleus tables plus classes, biframes as a
//! frame with two label lists, spaces as point and open-set lists.
//! Output ordering is deterministic everywhere: serde_json maps are
//! sorted, element lists follow frame order.

use crate::biframe::{validate_bihom, validate_biframe, Biframe, BiframeHom};
use crate::category::{Diagram, DiagramArrow};
use crate::clear::RecognizerWitness;
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::frame::{build_frame, Frame, FrameRef};
use crate::hom::{validate_hom, FrameHom};
use crate::poset::FinitePoset;
use crate::space::FiniteSpace;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameJson {
    pub name: String,
    pub elements: Vec<String>,
    /// Pairs x <= y; closed reflexively and transitively on ingestion.
    pub order: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomJson {
    pub source: FrameJson,
    pub target: FrameJson,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CongruenceJson {
    pub frame: String,
    pub nucleus: BTreeMap<String, String>,
    pub classes: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BiframeJson {
    pub frame: FrameJson,
    pub part1: Vec<String>,
    pub part2: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceJson {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    pub objects: BTreeMap<String, BiframeJson>,
    pub arrows: Vec<DiagramArrowJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramArrowJson {
    pub name: String,
    pub from: String,
    pub to: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RecognizerReportJson {
    pub is_congruence_frame: bool,
    pub witnesses: Vec<RecognizerWitnessJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RecognizerWitnessJson {
    pub fixed_points: Vec<String>,
    pub c_map: BTreeMap<String, String>,
    pub first_part_iso_class: String,
}

pub fn frame_to_json(f: &Frame) -> FrameJson {
    let mut order = Vec::new();
    for x in f.elements() {
        for y in f.poset().upper_covers(x) {
            order.push((f.label(x).to_string(), f.label(y).to_string()));
        }
    }
    if f.len() == 1 {
        order.push((f.label(0).to_string(), f.label(0).to_string()));
    }
    FrameJson {
        name: f.name().to_string(),
        elements: f.elements().map(|x| f.label(x).to_string()).collect(),
        order,
    }
}

pub fn frame_from_json(j: &FrameJson) -> Result<FrameRef> {
    let cap = crate::hard_cap();
    if j.elements.len() > cap {
        return Err(Error::BoundExceeded {
            what: "frame input",
            size: j.elements.len(),
            bound: cap,
        });
    }
    let poset = FinitePoset::from_labeled_pairs(j.elements.clone(), &j.order)?;
    Ok(Arc::new(build_frame(j.name.clone(), poset)?))
}

pub fn hom_from_json(j: &HomJson) -> Result<FrameHom> {
    let source = frame_from_json(&j.source)?;
    let target = frame_from_json(&j.target)?;
    let mut map = Vec::with_capacity(source.len());
    for x in source.elements() {
        let label = source.label(x);
        let image = j
            .map
            .get(label)
            .ok_or_else(|| Error::Invalid(format!("map is missing element {label:?}")))?;
        let y = target
            .index_of(image)
            .ok_or_else(|| Error::UnknownLabel(image.clone()))?;
        map.push(y);
    }
    validate_hom(source, target, map)
}

pub fn congruence_to_json(c: &Congruence) -> CongruenceJson {
    let f = c.frame();
    CongruenceJson {
        frame: f.name().to_string(),
        nucleus: f
            .elements()
            .map(|x| (f.label(x).to_string(), f.label(c.apply(x)).to_string()))
            .collect(),
        classes: c
            .classes()
            .into_iter()
            .map(|class| class.into_iter().map(|x| f.label(x).to_string()).collect())
            .collect(),
    }
}

pub fn biframe_to_json(b: &Biframe) -> BiframeJson {
    let t = b.total();
    BiframeJson {
        frame: frame_to_json(t),
        part1: b.part1().iter().map(|&x| t.label(x).to_string()).collect(),
        part2: b.part2().iter().map(|&x| t.label(x).to_string()).collect(),
    }
}

pub fn biframe_from_json(j: &BiframeJson) -> Result<Biframe> {
    let total = frame_from_json(&j.frame)?;
    let resolve = |labels: &[String]| -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|l| total.index_of(l).ok_or_else(|| Error::UnknownLabel(l.clone())))
            .collect()
    };
    validate_biframe(total.clone(), resolve(&j.part1)?, resolve(&j.part2)?)
}

pub fn space_to_json(x: &FiniteSpace) -> SpaceJson {
    SpaceJson {
        points: x.points().to_vec(),
        opens: x.opens().iter().map(|&m| x.open_labels(m)).collect(),
    }
}

pub fn space_from_json(j: &SpaceJson) -> Result<FiniteSpace> {
    FiniteSpace::from_labeled(j.points.clone(), &j.opens)
}

pub fn diagram_from_json(j: &DiagramJson) -> Result<Diagram> {
    let mut objects = BTreeMap::new();
    for (name, bj) in &j.objects {
        objects.insert(name.clone(), biframe_from_json(bj)?);
    }
    let mut arrows = Vec::new();
    for aj in &j.arrows {
        let from = objects
            .get(&aj.from)
            .ok_or_else(|| Error::Invalid(format!("arrow {} from unknown object {}", aj.name, aj.from)))?;
        let to = objects
            .get(&aj.to)
            .ok_or_else(|| Error::Invalid(format!("arrow {} to unknown object {}", aj.name, aj.to)))?;
        let mut map = Vec::with_capacity(from.total().len());
        for x in from.total().elements() {
            let label = from.total().label(x);
            let image = aj
                .map
                .get(label)
                .ok_or_else(|| Error::Invalid(format!("arrow {} missing element {label:?}", aj.name)))?;
            let y = to
                .total()
                .index_of(image)
                .ok_or_else(|| Error::UnknownLabel(image.clone()))?;
            map.push(y);
        }
        arrows.push(DiagramArrow {
            name: aj.name.clone(),
            from: aj.from.clone(),
            to: aj.to.clone(),
            hom: validate_bihom(from.clone(), to.clone(), map)?,
        });
    }
    let d = Diagram { objects, arrows };
    d.validate()?;
    Ok(d)
}

pub fn bihom_to_map(h: &BiframeHom) -> BTreeMap<String, String> {
    let s = h.source().total();
    let t = h.target().total();
    s.elements()
        .map(|x| (s.label(x).to_string(), t.label(h.apply(x)).to_string()))
        .collect()
}

pub fn recognizer_report_to_json(
    frame: &Frame,
    witnesses: &[RecognizerWitness],
) -> RecognizerReportJson {
    RecognizerReportJson {
        is_congruence_frame: !witnesses.is_empty(),
        witnesses: witnesses
            .iter()
            .map(|w| RecognizerWitnessJson {
                fixed_points: w
                    .fixed_points
                    .iter()
                    .map(|&x| frame.label(x).to_string())
                    .collect(),
                c_map: frame
                    .elements()
                    .map(|x| (frame.label(x).to_string(), frame.label(w.c_map[x]).to_string()))
                    .collect(),
                first_part_iso_class: w.first_part_iso_class.clone(),
            })
            .collect(),
    }
}
