//! Part-wise aggregation and root broadcast.

use serde::{Deserialize, Serialize};

use super::{
    run, Activity, Field, Inbox, Message, Network, PhaseTrace, RoundTrace, SimConfig, SimError, VertexProgram,
};
use crate::planar::VertexId;
use crate::tree::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AggOp {
    Sum,
    Min,
    Max,
    Or,
    And,
}

impl AggOp {
    pub fn identity(self) -> u128 {
        match self {
            AggOp::Sum | AggOp::Max | AggOp::Or => 0,
            AggOp::Min | AggOp::And => u128::MAX,
        }
    }

    pub fn combine(self, a: u128, b: u128) -> u128 {
        match self {
            AggOp::Sum => a.saturating_add(b),
            AggOp::Min => a.min(b),
            AggOp::Max => a.max(b),
            AggOp::Or => u128::from(a != 0 || b != 0),
            AggOp::And => u128::from(a != 0 && b != 0),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PaBackend {
    /// Message-level leader election, BFS and convergecast inside each part.
    #[default]
    Honest,
    /// Computed out of band; each call is billed by [`ChargeModel`].
    Charged,
}

/// Bills one aggregation call as `c_pa · D · ⌈log2 n⌉²` rounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeModel {
    pub c_pa: u64,
    pub diameter: u32,
    pub log_n: u32,
}

impl ChargeModel {
    pub fn new(n: usize, diameter: u32) -> Self {
        let log_n = if n <= 1 { 1 } else { super::bit_length((n - 1) as u128) };
        ChargeModel { c_pa: 1, diameter, log_n }
    }

    pub fn per_call(&self) -> u64 {
        self.c_pa * u64::from(self.diameter.max(1)) * u64::from(self.log_n) * u64::from(self.log_n)
    }
}

/// Vertex-disjoint parts; each must induce a connected subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub part_of: Vec<u32>,
}

impl Partition {
    pub fn whole(n: usize) -> Self {
        Partition { part_of: vec![0; n] }
    }

    pub fn part_count(&self) -> usize {
        self.part_of.iter().map(|&p| p as usize + 1).max().unwrap_or(0)
    }

    /// Checks that each part is connected through its own ports.
    pub fn validate(&self, net: &Network) -> Result<(), SimError> {
        let n = net.len();
        let parts = self.part_count();
        let mut seen = vec![false; n];
        let mut started = vec![false; parts];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let p = self.part_of[s];
            if started[p as usize] {
                return Err(SimError::InvalidPartition(p));
            }
            started[p as usize] = true;
            seen[s] = true;
            let mut stack = vec![s as VertexId];
            while let Some(v) = stack.pop() {
                for port in net.ports(v) {
                    let w = port.neighbor as usize;
                    if !seen[w] && self.part_of[w] == p {
                        seen[w] = true;
                        stack.push(port.neighbor);
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeFoldState {
    pub parent: Option<u32>,
    pub children: Vec<u32>,
    pub input: Vec<u64>,
    /// Fold of the vertex's own subtree, final once all children reported.
    pub subtree: Vec<u128>,
    /// What each child port reported.
    pub child_values: Vec<(u32, Vec<u64>)>,
    /// Fold over the whole tree, broadcast back down.
    pub result: Vec<u64>,
    waiting: usize,
}

impl TreeFoldState {
    pub fn new(parent: Option<u32>, children: Vec<u32>, input: Vec<u64>) -> Self {
        TreeFoldState { parent, children, input, ..TreeFoldState::default() }
    }

    pub fn child_value(&self, port: u32) -> Option<&[u64]> {
        self.child_values.iter().find(|(p, _)| *p == port).map(|(_, v)| v.as_slice())
    }
}

/// Convergecast then broadcast over a rooted spanning forest given by ports.
pub struct TreeFold {
    pub ops: Vec<AggOp>,
    pub widths: Vec<u32>,
}

impl TreeFold {
    fn message(&self, values: impl Iterator<Item = u128>) -> Message {
        Message::new(
            values
                .zip(&self.widths)
                .map(|(v, &width)| Field { value: u64::try_from(v).unwrap_or(u64::MAX), width })
                .collect(),
        )
    }

    fn finish_up(&self, state: &mut TreeFoldState, out: &mut Vec<(u32, Message)>) {
        match state.parent {
            Some(p) => out.push((p, self.message(state.subtree.iter().copied()))),
            None => {
                state.result = state.subtree.iter().map(|&v| u64::try_from(v).unwrap_or(u64::MAX)).collect();
                let msg = self.message(state.subtree.iter().copied());
                out.extend(state.children.iter().map(|&c| (c, msg.clone())));
            }
        }
    }
}

impl VertexProgram for TreeFold {
    type State = TreeFoldState;

    fn step(
        &self,
        round: u32,
        _: VertexId,
        state: &mut TreeFoldState,
        inbox: &Inbox,
        out: &mut Vec<(u32, Message)>,
    ) -> Activity {
        if round == 0 {
            state.subtree =
                state.input.iter().zip(&self.ops).map(|(&x, op)| op.combine(op.identity(), u128::from(x))).collect();
            state.waiting = state.children.len();
            if state.waiting == 0 {
                self.finish_up(state, out);
            }
        }
        for (port, msg) in inbox {
            if Some(*port) == state.parent {
                state.result = msg.fields.iter().map(|f| f.value).collect();
                out.extend(state.children.iter().map(|&c| (c, msg.clone())));
            } else {
                let values: Vec<u64> = msg.fields.iter().map(|f| f.value).collect();
                for (acc, (&x, op)) in state.subtree.iter_mut().zip(values.iter().zip(&self.ops)) {
                    *acc = op.combine(*acc, u128::from(x));
                }
                state.child_values.push((*port, values));
                state.waiting -= 1;
                if state.waiting == 0 {
                    self.finish_up(state, out);
                }
            }
        }
        Activity::Sleep
    }
}

/// Fails when a root's result does not fit its field.
pub(crate) fn check_results(states: &[TreeFoldState], widths: &[u32]) -> Result<(), SimError> {
    for (v, s) in states.iter().enumerate() {
        if s.parent.is_some() {
            continue;
        }
        for (&x, &width) in s.subtree.iter().zip(widths) {
            if width < 128 && x >> width != 0 {
                return Err(SimError::OperatorOverflow { round: 0, vertex: v as VertexId, value: x, width });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default)]
struct ElectState {
    part: u32,
    leader: VertexId,
    intra: Vec<bool>,
    changed: bool,
}

/// Min-id flooding inside each part; also learns which ports stay inside.
struct Elect<'a> {
    net: &'a Network,
}

impl VertexProgram for Elect<'_> {
    type State = ElectState;

    fn step(
        &self,
        round: u32,
        v: VertexId,
        s: &mut ElectState,
        inbox: &Inbox,
        out: &mut Vec<(u32, Message)>,
    ) -> Activity {
        let w = self.net.widths();
        let degree = self.net.ports(v).len();
        if round == 0 {
            s.leader = v;
            s.intra = vec![false; degree];
            s.changed = true;
        }
        for (port, msg) in inbox {
            if msg.get(0) as u32 == s.part {
                s.intra[*port as usize] = true;
                let candidate = msg.get(1) as VertexId;
                if candidate < s.leader {
                    s.leader = candidate;
                    s.changed = true;
                }
            }
        }
        if s.changed {
            s.changed = false;
            let msg = Message::new(vec![w.id(s.part), w.id(s.leader)]);
            for p in 0..degree as u32 {
                if round == 0 || s.intra[p as usize] {
                    out.push((p, msg.clone()));
                }
            }
        }
        Activity::Sleep
    }
}

#[derive(Clone, Debug, Default)]
struct PartBfsState {
    leader: bool,
    intra: Vec<bool>,
    joined: bool,
    parent: Option<u32>,
    children: Vec<u32>,
}

/// BFS from each part leader; the parent is the smallest-id sender of the
/// first wave, and children announce themselves with a join message.
struct PartBfs<'a> {
    net: &'a Network,
}

impl VertexProgram for PartBfs<'_> {
    type State = PartBfsState;

    fn step(
        &self,
        round: u32,
        v: VertexId,
        s: &mut PartBfsState,
        inbox: &Inbox,
        out: &mut Vec<(u32, Message)>,
    ) -> Activity {
        let w = self.net.widths();
        let ports = self.net.ports(v);
        let explore = |out: &mut Vec<(u32, Message)>, s: &PartBfsState| {
            for p in 0..ports.len() as u32 {
                if s.intra[p as usize] && Some(p) != s.parent {
                    out.push((p, Message::new(vec![w.flag(false)])));
                }
            }
        };
        if round == 0 && s.leader {
            s.joined = true;
            explore(out, s);
        }
        let mut best: Option<u32> = None;
        for (port, msg) in inbox {
            if msg.get(0) == 1 {
                s.children.push(*port);
            } else if !s.joined && best.is_none_or(|b| ports[*port as usize].neighbor < ports[b as usize].neighbor) {
                best = Some(*port);
            }
        }
        if let Some(p) = best {
            s.joined = true;
            s.parent = Some(p);
            out.push((p, Message::new(vec![w.flag(true)])));
            explore(out, s);
        }
        s.children.sort_unstable();
        Activity::Sleep
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaOutcome {
    /// The aggregate of each vertex's part, known at that vertex.
    pub values: Vec<u64>,
    pub trace: RoundTrace,
}

/// Aggregates `inputs` with `op` inside every part of `partition`.
pub fn pa_aggregate(
    net: &Network,
    partition: &Partition,
    inputs: &[u64],
    op: AggOp,
    backend: PaBackend,
    cfg: &SimConfig,
    charge: &ChargeModel,
) -> Result<PaOutcome, SimError> {
    let n = net.len();
    assert_eq!(inputs.len(), n, "one input per vertex");
    partition.validate(net)?;
    let width = net.widths().budget.min(64);
    let mut trace = RoundTrace::default();
    match backend {
        PaBackend::Charged => {
            let mut acc = vec![op.identity(); partition.part_count()];
            for (v, &x) in inputs.iter().enumerate() {
                let p = partition.part_of[v] as usize;
                acc[p] = op.combine(acc[p], u128::from(x));
            }
            if let Some((p, &x)) = acc.iter().enumerate().find(|(_, &x)| width < 128 && x >> width != 0) {
                let vertex = partition.part_of.iter().position(|&q| q as usize == p).unwrap_or(0) as VertexId;
                return Err(SimError::OperatorOverflow { round: 0, vertex, value: x, width });
            }
            let values = partition.part_of.iter().map(|&p| acc[p as usize] as u64).collect();
            let mut phase = PhaseTrace::new("pa-aggregate");
            phase.charged_rounds = charge.per_call();
            phase.pa_calls = 1;
            trace.push(phase);
            Ok(PaOutcome { values, trace })
        }
        PaBackend::Honest => {
            let mut elect: Vec<ElectState> =
                (0..n).map(|v| ElectState { part: partition.part_of[v], ..ElectState::default() }).collect();
            let mut setup = run(net, &Elect { net }, &mut elect, cfg, "pa-setup")?;
            let mut bfs: Vec<PartBfsState> = elect
                .iter()
                .enumerate()
                .map(|(v, e)| PartBfsState {
                    leader: e.leader == v as VertexId,
                    intra: e.intra.clone(),
                    ..PartBfsState::default()
                })
                .collect();
            setup.absorb(&run(net, &PartBfs { net }, &mut bfs, cfg, "pa-setup")?);
            trace.push(setup);
            let program = TreeFold { ops: vec![op], widths: vec![width] };
            let mut states: Vec<TreeFoldState> =
                bfs.into_iter().zip(inputs).map(|(b, &x)| TreeFoldState::new(b.parent, b.children, vec![x])).collect();
            let mut phase = run(net, &program, &mut states, cfg, "pa-aggregate")?;
            check_results(&states, &program.widths)?;
            phase.pa_calls = 1;
            trace.push(phase);
            Ok(PaOutcome { values: states.iter().map(|s| s.result[0]).collect(), trace })
        }
    }
}

/// Lowest port of `v` leading to `w`.
pub(crate) fn port_to(net: &Network, v: VertexId, w: VertexId) -> u32 {
    net.ports(v).iter().position(|p| p.neighbor == w).expect("tree edge is a network edge") as u32
}

struct Broadcast;

impl VertexProgram for Broadcast {
    type State = (Vec<u32>, Option<Field>);

    fn step(
        &self,
        round: u32,
        _: VertexId,
        s: &mut Self::State,
        inbox: &Inbox,
        out: &mut Vec<(u32, Message)>,
    ) -> Activity {
        let value = match inbox.first() {
            Some((_, msg)) => Some(msg.fields[0]),
            None if round == 0 => s.1,
            None => None,
        };
        if let Some(f) = value {
            s.1 = Some(f);
            out.extend(s.0.iter().map(|&c| (c, Message::new(vec![f]))));
        }
        Activity::Sleep
    }
}

/// Sends `value` from the root of `tree` to every vertex.
pub fn broadcast_root(
    net: &Network,
    tree: &RootedTree,
    value: u64,
    cfg: &SimConfig,
) -> Result<(Vec<u64>, PhaseTrace), SimError> {
    let mut states: Vec<(Vec<u32>, Option<Field>)> = (0..net.len() as VertexId)
        .map(|v| (tree.children(v).iter().map(|&c| port_to(net, v, c)).collect(), None))
        .collect();
    states[tree.root() as usize].1 = Some(net.widths().value(value));
    let trace = run(net, &Broadcast, &mut states, cfg, "broadcast")?;
    let values = states.iter().map(|s| s.1.map_or(0, |f| f.value)).collect();
    Ok((values, trace))
}
