//! Text format for instance files (`.icp`).
//!
//! Instance files are TOML documents:
//!
//! ```toml
//! users = ["u1", "u2", "u3"]
//!
//! [[packets]]
//! id = "p1"
//! weight = 1            # optional, defaults to 1
//! demand = "u1"         # a user id, or a one-element list
//! side = ["u2", "u3"]   # optional, defaults to []
//! ```
//!
//! Ids are non-empty tokens of ASCII letters, digits and underscores.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Instance, InstanceError, PacketType};

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    users: Vec<String>,
    #[serde(default)]
    packets: Vec<PacketDoc>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct PacketDoc {
    id: String,
    #[serde(default = "default_weight")]
    weight: u64,
    demand: DemandDoc,
    #[serde(default)]
    side: Vec<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum DemandDoc {
    One(String),
    Many(Vec<String>),
}

fn default_weight() -> u64 {
    1
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let prefix = &text[..offset.min(text.len())];
    let line = prefix.matches('\n').count() + 1;
    let column = prefix.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let doc: InstanceDoc = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        InstanceError::Syntax {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;

    let users = doc.users;
    let lookup = |packet: &str, name: &str| {
        users
            .iter()
            .position(|u| u == name)
            .ok_or_else(|| InstanceError::UnknownUser {
                packet: packet.to_string(),
                user: name.to_string(),
            })
    };

    let mut packets = Vec::with_capacity(doc.packets.len());
    for p in &doc.packets {
        let demand_names = match &p.demand {
            DemandDoc::One(u) => vec![u.clone()],
            DemandDoc::Many(us) => us.clone(),
        };
        let demand = match demand_names.as_slice() {
            [] => return Err(InstanceError::EmptyDemand(p.id.clone())),
            [u] => lookup(&p.id, u)?,
            many => {
                return Err(InstanceError::Multicast {
                    packet: p.id.clone(),
                    users: many.to_vec(),
                })
            }
        };
        let side = p
            .side
            .iter()
            .map(|u| lookup(&p.id, u))
            .collect::<Result<BTreeSet<_>, _>>()?;
        packets.push(PacketType {
            id: p.id.clone(),
            weight: p.weight,
            demand,
            side,
        });
    }
    Instance::new(users, packets)
}

/// Writes an instance in the format accepted by [`parse_instance`].
pub fn serialize_instance(inst: &Instance) -> String {
    let doc = InstanceDoc {
        users: inst.users().to_vec(),
        packets: inst
            .packets()
            .iter()
            .map(|p| PacketDoc {
                id: p.id.clone(),
                weight: p.weight,
                demand: DemandDoc::One(inst.users()[p.demand].clone()),
                side: p.side.iter().map(|&u| inst.users()[u].clone()).collect(),
            })
            .collect(),
    };
    toml::to_string(&doc).expect("instance documents always serialize")
}
