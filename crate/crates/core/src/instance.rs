//! The JSON instance format: a root system (by type tag or Cartan matrix),
//! a fan over the cocharacter lattice, optional ample ray values and a
//! one-parameter direction, and options. Shipped instances live here too.

use serde_json::Value;

use crate::fan::Fan;
use crate::root::RootSystem;
use crate::Error;

#[derive(Clone, Debug)]
pub struct InstanceOptions {
    pub weyl_bound: usize,
    pub parallel: Option<usize>,
}

impl Default for InstanceOptions {
    fn default() -> Self {
        InstanceOptions {
            weyl_bound: crate::root::DEFAULT_WEYL_BOUND,
            parallel: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceFile {
    pub root_system: RootSystem,
    pub fan: Fan,
    pub psi: Option<Vec<i64>>,
    pub bb_direction: Option<Vec<i64>>,
    pub options: InstanceOptions,
}

fn take_i64(v: &Value, what: &str) -> Result<i64, Error> {
    v.as_i64()
        .ok_or_else(|| Error::Validation(format!("{what} must be an integer")))
}

fn take_ivec(v: &Value, what: &str) -> Result<Vec<i64>, Error> {
    v.as_array()
        .ok_or_else(|| Error::Validation(format!("{what} must be an array")))?
        .iter()
        .map(|x| take_i64(x, what))
        .collect()
}

fn take_ivecs(v: &Value, what: &str) -> Result<Vec<Vec<i64>>, Error> {
    v.as_array()
        .ok_or_else(|| Error::Validation(format!("{what} must be an array of arrays")))?
        .iter()
        .map(|x| take_ivec(x, what))
        .collect()
}

fn parse_root_system(v: &Value) -> Result<RootSystem, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Validation("root_system must be an object".into()))?;
    if let Some(t) = obj.get("type") {
        let name = t
            .as_str()
            .ok_or_else(|| Error::Validation("root_system.type must be a string".into()))?;
        return match name {
            "A1" => Ok(RootSystem::a1()),
            "A2" => Ok(RootSystem::a2()),
            "A1xA1" => Ok(RootSystem::a1xa1()),
            "B2" => Ok(RootSystem::b2()),
            other => Err(Error::Validation(format!(
                "unknown root system type {other:?} (expected A1, A2, A1xA1 or B2)"
            ))),
        };
    }
    let cartan_v = obj
        .get("cartan")
        .ok_or_else(|| Error::Validation("root_system needs a type or a cartan matrix".into()))?;
    let cartan = take_ivecs(cartan_v, "root_system.cartan")?;
    let central = match obj.get("central_rank") {
        None => 0,
        Some(c) => usize::try_from(take_i64(c, "root_system.central_rank")?)
            .map_err(|_| Error::Validation("central_rank must be nonnegative".into()))?,
    };
    RootSystem::from_cartan(cartan, central)
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::Validation(format!("malformed JSON: {e}")))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Validation("instance must be a JSON object".into()))?;
        let root_system = parse_root_system(
            obj.get("root_system")
                .ok_or_else(|| Error::Validation("missing root_system".into()))?,
        )?;
        let fan_v = obj
            .get("fan")
            .ok_or_else(|| Error::Validation("missing fan".into()))?;
        let fan_obj = fan_v
            .as_object()
            .ok_or_else(|| Error::Validation("fan must be an object".into()))?;
        let rays = take_ivecs(
            fan_obj
                .get("rays")
                .ok_or_else(|| Error::Validation("fan needs rays".into()))?,
            "fan.rays",
        )?;
        let cones_v = fan_obj
            .get("maximal_cones")
            .ok_or_else(|| Error::Validation("fan needs maximal_cones".into()))?;
        let cones: Vec<Vec<usize>> = take_ivecs(cones_v, "fan.maximal_cones")?
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|i| {
                        usize::try_from(i).map_err(|_| {
                            Error::Validation("cone ray indices must be nonnegative".into())
                        })
                    })
                    .collect::<Result<Vec<usize>, Error>>()
            })
            .collect::<Result<_, _>>()?;
        let dim = root_system.dim();
        let fan = Fan::new(dim, rays, cones)?;
        // psi and bb_direction may sit at the top level or inside the fan
        let pick = |key: &str| -> Option<&Value> { obj.get(key).or_else(|| fan_obj.get(key)) };
        let psi = pick("psi").map(|p| take_ivec(p, "psi")).transpose()?;
        let bb_direction = pick("bb_direction")
            .map(|p| take_ivec(p, "bb_direction"))
            .transpose()?;
        if let Some(p) = &psi {
            if p.len() != fan.rays.len() {
                return Err(Error::Validation(format!(
                    "psi has {} values but the fan has {} rays",
                    p.len(),
                    fan.rays.len()
                )));
            }
        }
        if let Some(d) = &bb_direction {
            if d.len() != dim {
                return Err(Error::Validation(format!(
                    "bb_direction has length {} but the lattice has rank {dim}",
                    d.len()
                )));
            }
        }
        let mut options = InstanceOptions::default();
        if let Some(o) = obj.get("options") {
            let oo = o
                .as_object()
                .ok_or_else(|| Error::Validation("options must be an object".into()))?;
            if let Some(b) = oo.get("weyl_bound") {
                options.weyl_bound = usize::try_from(take_i64(b, "options.weyl_bound")?)
                    .map_err(|_| Error::Validation("weyl_bound must be nonnegative".into()))?;
            }
            if let Some(p) = oo.get("parallel") {
                options.parallel = Some(
                    usize::try_from(take_i64(p, "options.parallel")?)
                        .map_err(|_| Error::Validation("parallel must be nonnegative".into()))?,
                );
            }
        }
        Ok(InstanceFile {
            root_system,
            fan,
            psi,
            bb_direction,
            options,
        })
    }

    /// Ray values, defaulting to an ample search when absent.
    pub fn psi_or_search(&self) -> Result<Vec<i64>, Error> {
        match &self.psi {
            Some(p) => Ok(p.clone()),
            None => crate::fan::find_ample(&self.fan)?.ok_or_else(|| {
                Error::Validation("no ample ray values exist for this fan".into())
            }),
        }
    }

    /// The direction, defaulting to powers of two (generic for the shipped
    /// fans; rejected later if not generic for this one).
    pub fn direction_or_default(&self) -> Vec<i64> {
        match &self.bb_direction {
            Some(d) => d.clone(),
            None => (0..self.root_system.dim()).map(|k| 1i64 << k).collect(),
        }
    }
}

/// Shipped instance: the rank-one wonderful compactification.
pub fn wonderful_a1_json() -> &'static str {
    r#"{
  "root_system": {"type": "A1"},
  "fan": {"rays": [[1]], "maximal_cones": [[0]]},
  "psi": [0],
  "bb_direction": [1]
}"#
}

/// Shipped instance: the rank-two wonderful compactification.
pub fn wonderful_a2_json() -> &'static str {
    r#"{
  "root_system": {"type": "A2"},
  "fan": {"rays": [[1, 0], [0, 1]], "maximal_cones": [[0, 1]]},
  "psi": [0, 0],
  "bb_direction": [1, 2]
}"#
}

/// Shipped instance: the subdivided-quadrant regular compactification.
pub fn quadrant_a1xa1_json() -> &'static str {
    r#"{
  "root_system": {"type": "A1xA1"},
  "fan": {"rays": [[1, 0], [1, 1], [0, 1]], "maximal_cones": [[0, 1], [1, 2]]},
  "psi": [0, 1, 0],
  "bb_direction": [1, 2]
}"#
}

/// Shipped toric-only instance: the projective line as a torus case.
pub fn p1_torus_json() -> &'static str {
    r#"{
  "root_system": {"cartan": [], "central_rank": 1},
  "fan": {"rays": [[1], [-1]], "maximal_cones": [[0], [1]]},
  "psi": [0, -1],
  "bb_direction": [1]
}"#
}

/// Shipped toric-only instance: the complete square fan (a product of two
/// projective lines) as a torus case.
pub fn square_torus_json() -> &'static str {
    r#"{
  "root_system": {"cartan": [], "central_rank": 2},
  "fan": {
    "rays": [[1, 0], [0, 1], [-1, 0], [0, -1]],
    "maximal_cones": [[0, 1], [1, 2], [2, 3], [0, 3]]
  },
  "psi": [0, 0, -1, -1],
  "bb_direction": [1, 2]
}"#
}

pub fn shipped_instances() -> Vec<(&'static str, &'static str)> {
    vec![
        ("wonderful_a1", wonderful_a1_json()),
        ("wonderful_a2", wonderful_a2_json()),
        ("quadrant_a1xa1", quadrant_a1xa1_json()),
        ("p1_torus", p1_torus_json()),
        ("square_torus", square_torus_json()),
    ]
}
