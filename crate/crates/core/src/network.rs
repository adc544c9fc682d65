//! Static sensor field: deployment, geometry and per-node energy bookkeeping.

use rand::Rng;

use crate::config::ConfigError;

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

pub fn distance(a: Point, b: Point) -> f64 {
    a.distance(b)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    pub width: f64,
    pub height: f64,
    pub bs_position: Point,
    pub node_count: usize,
    pub initial_energy: f64,
}

impl FieldConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.width.is_finite() && self.width > 0.0) {
            return Err(ConfigError::invalid("field.width", "must be > 0"));
        }
        if !(self.height.is_finite() && self.height > 0.0) {
            return Err(ConfigError::invalid("field.height", "must be > 0"));
        }
        let Point { x, y } = self.bs_position;
        if !(0.0..=self.width).contains(&x) || !(0.0..=self.height).contains(&y) {
            return Err(ConfigError::invalid("field.bs_position", "must lie inside the field"));
        }
        if self.node_count == 0 {
            return Err(ConfigError::invalid("field.node_count", "must be >= 1"));
        }
        if !(self.initial_energy.is_finite() && self.initial_energy > 0.0) {
            return Err(ConfigError::invalid("field.initial_energy", "must be > 0"));
        }
        Ok(())
    }

    /// Largest possible node to base station distance: the farthest field corner.
    /// Equals the half-diagonal when the base station is centered.
    pub fn max_bs_distance(&self) -> f64 {
        [
            Point::new(0.0, 0.0),
            Point::new(self.width, 0.0),
            Point::new(0.0, self.height),
            Point::new(self.width, self.height),
        ]
        .into_iter()
        .map(|c| c.distance(self.bs_position))
        .fold(0.0, f64::max)
    }

    pub fn diagonal(&self) -> f64 {
        self.width.hypot(self.height)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Alive,
    EnergyDead,
    FaultDead,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// Ordinary member.
    Nch,
    /// Primary cluster head.
    Pch,
    /// Backup cluster head.
    Bch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub position: Point,
    pub residual_energy: f64,
    pub status: Status,
    pub role: Role,
    /// Last round this node served as an elected head (LEACH rotation).
    pub last_head_round: Option<u64>,
    /// Everything this node has been charged, by kind.
    pub charged: EnergyLedger,
}

impl Node {
    pub fn is_alive(&self) -> bool {
        self.status == Status::Alive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyKind {
    Tx,
    Rx,
    Aggregation,
}

/// Energy actually removed from node batteries, by kind.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EnergyLedger {
    pub tx: f64,
    pub rx: f64,
    pub aggregation: f64,
}

impl EnergyLedger {
    pub fn total(&self) -> f64 {
        self.tx + self.rx + self.aggregation
    }

    fn add(&mut self, kind: EnergyKind, joules: f64) {
        match kind {
            EnergyKind::Tx => self.tx += joules,
            EnergyKind::Rx => self.rx += joules,
            EnergyKind::Aggregation => self.aggregation += joules,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    nodes: Vec<Node>,
    bs: Point,
    initial_energy: f64,
    ledger: EnergyLedger,
}

impl Network {
    /// Uniform random deployment over the field; all nodes alive at full energy.
    pub fn deploy<R: Rng>(cfg: &FieldConfig, rng: &mut R) -> Self {
        let positions = (0..cfg.node_count)
            .map(|_| {
                let x = rng.random::<f64>() * cfg.width;
                let y = rng.random::<f64>() * cfg.height;
                Point::new(x, y)
            })
            .collect();
        Self::from_positions(positions, cfg.bs_position, cfg.initial_energy)
    }

    pub fn from_positions(positions: Vec<Point>, bs: Point, initial_energy: f64) -> Self {
        let nodes = positions
            .into_iter()
            .enumerate()
            .map(|(id, position)| Node {
                id,
                position,
                residual_energy: initial_energy,
                status: Status::Alive,
                role: Role::Nch,
                last_head_round: None,
                charged: EnergyLedger::default(),
            })
            .collect();
        Self { nodes, bs, initial_energy, ledger: EnergyLedger::default() }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bs(&self) -> Point {
        self.bs
    }

    pub fn initial_energy(&self) -> f64 {
        self.initial_energy
    }

    pub fn ledger(&self) -> &EnergyLedger {
        &self.ledger
    }

    pub fn is_alive(&self, id: NodeId) -> bool {
        self.nodes[id].is_alive()
    }

    pub fn alive_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().filter(|n| n.is_alive()).map(|n| n.id)
    }

    pub fn alive_count(&self) -> usize {
        alive_count(&self.nodes)
    }

    pub fn total_residual(&self) -> f64 {
        self.nodes.iter().map(|n| n.residual_energy).sum()
    }

    pub fn distance(&self, a: NodeId, b: NodeId) -> f64 {
        self.nodes[a].position.distance(self.nodes[b].position)
    }

    pub fn distance_to_bs(&self, id: NodeId) -> f64 {
        self.nodes[id].position.distance(self.bs)
    }

    /// Charges `joules` to an alive node. If the battery cannot cover the
    /// cost, the node does nothing, is drained to zero and becomes
    /// energy-dead. Returns whether the action happened.
    pub fn spend(&mut self, id: NodeId, joules: f64, kind: EnergyKind) -> bool {
        let node = &mut self.nodes[id];
        if !node.is_alive() {
            return false;
        }
        if joules > node.residual_energy {
            let drained = node.residual_energy;
            node.residual_energy = 0.0;
            node.status = Status::EnergyDead;
            node.role = Role::Nch;
            node.charged.add(kind, drained);
            self.ledger.add(kind, drained);
            return false;
        }
        node.residual_energy -= joules;
        node.charged.add(kind, joules);
        self.ledger.add(kind, joules);
        if node.residual_energy <= 0.0 {
            node.residual_energy = 0.0;
            node.status = Status::EnergyDead;
            node.role = Role::Nch;
        }
        true
    }

    /// Permanent hardware failure. The battery keeps its charge but the node is gone.
    pub fn fail(&mut self, id: NodeId) {
        let node = &mut self.nodes[id];
        if node.is_alive() {
            node.status = Status::FaultDead;
            node.role = Role::Nch;
        }
    }

    pub fn set_role(&mut self, id: NodeId, role: Role) {
        if self.nodes[id].is_alive() {
            self.nodes[id].role = role;
        }
    }

    pub fn reset_roles(&mut self) {
        for n in &mut self.nodes {
            n.role = Role::Nch;
        }
    }

    pub(crate) fn mark_head(&mut self, id: NodeId, round: u64) {
        self.nodes[id].last_head_round = Some(round);
    }
}

pub fn alive_count(nodes: &[Node]) -> usize {
    nodes.iter().filter(|n| n.is_alive()).count()
}
