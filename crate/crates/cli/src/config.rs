//! Run configuration for the independence commands. All fields carry
//! explicit defaults; exact coordinates are rational strings so configs
//! round-trip losslessly.

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use heisenlab::gaussian::{GaussianPacket, PacketSum};
use heisenlab::{DiscreteSubgroup, GroupElement, Rat, Scalar};

#[derive(Deserialize, Clone, Debug)]
pub struct PointSpec {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

impl PointSpec {
    pub fn to_element(&self, n: usize) -> Result<GroupElement<Rat>> {
        if self.x.len() != n || self.y.len() != n {
            bail!("point has {} + {} coordinates, expected n = {n}", self.x.len(), self.y.len());
        }
        let parse = |s: &String| {
            Rat::parse_str(s).ok_or_else(|| anyhow!("bad rational coordinate {s:?}"))
        };
        Ok(GroupElement::new(
            self.x.iter().map(parse).collect::<Result<Vec<_>>>()?,
            self.y.iter().map(parse).collect::<Result<Vec<_>>>()?,
        ))
    }
}

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum WindowSpec {
    /// `{"standard": d}` — the standard Gaussian on ℝ^d.
    Standard { standard: usize },
    /// `{"packets": [...]}` — explicit packet sum.
    Packets { packets: Vec<GaussianPacket> },
}

impl WindowSpec {
    pub fn to_packet_sum(&self) -> Result<PacketSum> {
        match self {
            WindowSpec::Standard { standard } => {
                if *standard == 0 {
                    bail!("window dimension must be positive");
                }
                Ok(PacketSum::standard(*standard))
            }
            WindowSpec::Packets { packets } => {
                if packets.is_empty() {
                    bail!("window must contain at least one packet");
                }
                let d = packets[0].dim();
                if packets.iter().any(|p| p.dim() != d) {
                    bail!("window packets have mixed dimensions");
                }
                let mut sum = PacketSum::zero();
                for p in packets {
                    sum = sum.add(&PacketSum::from_packet(p.clone()));
                }
                Ok(sum)
            }
        }
    }
}

fn default_radius() -> f64 {
    2.5
}

fn default_max_points() -> usize {
    400
}

fn default_seed() -> u64 {
    0
}

#[derive(Deserialize, Clone, Debug)]
pub struct SweepSpec {
    pub a_values: Vec<f64>,
    pub b_values: Vec<f64>,
    pub grid_sizes: Vec<usize>,
    #[serde(default)]
    pub offset: (f64, f64),
}

#[derive(Deserialize, Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    #[serde(default)]
    pub generators: Vec<PointSpec>,
    #[serde(default)]
    pub offset: Option<PointSpec>,
    pub window: WindowSpec,
    #[serde(default = "default_radius")]
    pub radius: f64,
    #[serde(default = "default_max_points")]
    pub max_points: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let cfg: RunConfig =
            serde_json::from_str(&text).with_context(|| format!("invalid config {}", path.display()))?;
        if cfg.n == 0 {
            bail!("ambient dimension n must be positive");
        }
        Ok(cfg)
    }

    pub fn subgroup(&self) -> Result<DiscreteSubgroup<Rat>> {
        let gens = self
            .generators
            .iter()
            .map(|p| p.to_element(self.n))
            .collect::<Result<Vec<_>>>()?;
        DiscreteSubgroup::new(self.n, gens).map_err(|e| anyhow!("{e}"))
    }

    pub fn offset_element(&self) -> Result<GroupElement<Rat>> {
        match &self.offset {
            None => Ok(GroupElement::identity(self.n)),
            Some(p) => p.to_element(self.n),
        }
    }
}
