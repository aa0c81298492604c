//! Synchronous message-passing simulator with a per-edge bit budget.
//!
//! Vertices run a [`VertexProgram`]; a message sent in round `r` is read in
//! round `r + 1`. Vertices sleep until a message arrives or they ask to stay
//! awake, and a run ends once nobody is awake and nothing is in flight.

mod pa;
mod trace;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::{DartKey, RotationSystem, VertexId};

pub(crate) use pa::check_results;
pub use pa::{
    broadcast_root, pa_aggregate, AggOp, ChargeModel, PaBackend, PaOutcome, Partition, TreeFold, TreeFoldState,
};
pub use trace::{PhaseTrace, RoundTrace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("round {round}: vertex {vertex} port {port} carries {bits} bits, budget {budget}")]
    BitBudgetExceeded { round: u32, vertex: VertexId, port: u32, bits: u32, budget: u32 },
    #[error("round limit {0} exceeded")]
    RoundLimitExceeded(u32),
    #[error("part {0} does not induce a connected subgraph")]
    InvalidPartition(u32),
    #[error("round {round}: vertex {vertex} value {value} does not fit in {width} bits")]
    OperatorOverflow { round: u32, vertex: VertexId, value: u128, width: u32 },
    #[error("vertices {0} and {1} both claim to be the root")]
    ConflictingRoots(VertexId, VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Port {
    pub neighbor: VertexId,
    /// Index of the reverse port at `neighbor`.
    pub back: u32,
}

/// Communication graph; ports of a vertex follow its rotation.
#[derive(Clone, Debug)]
pub struct Network {
    ports: Vec<Vec<Port>>,
    widths: Widths,
}

impl Network {
    pub fn from_system(g: &RotationSystem, widths: Widths) -> Self {
        let ports = (0..g.vertex_count() as VertexId)
            .map(|v| {
                g.rotation(v)
                    .iter()
                    .map(|&d| Port { neighbor: g.dart(d).head, back: g.rotation_position(g.rev(d)) as u32 })
                    .collect()
            })
            .collect();
        Network { ports, widths }
    }

    pub fn from_ports(ports: Vec<Vec<Port>>, widths: Widths) -> Self {
        Network { ports, widths }
    }

    pub fn len(&self) -> usize {
        self.ports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ports.is_empty()
    }

    pub fn ports(&self, v: VertexId) -> &[Port] {
        &self.ports[v as usize]
    }

    pub fn widths(&self) -> &Widths {
        &self.widths
    }

    /// Exact hop diameter over all ports (all-pairs BFS).
    pub fn diameter(&self) -> u32 {
        let n = self.len();
        crate::par::map_range(n, |s| {
            let mut dist = vec![u32::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            let mut far = 0;
            while let Some(v) = queue.pop_front() {
                far = far.max(dist[v]);
                for p in &self.ports[v] {
                    let w = p.neighbor as usize;
                    if dist[w] == u32::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            far
        })
        .into_iter()
        .max()
        .unwrap_or(0)
    }
}

/// Field widths in bits, fixed per network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Widths {
    pub id: u32,
    pub copy: u32,
    pub weight: u32,
    pub index: u32,
    pub budget: u32,
}

pub fn bit_length(x: u128) -> u32 {
    (128 - x.leading_zeros()).max(1)
}

/// `⌈log2(n + 1)⌉`, the width of a vertex id.
pub fn id_bits(n: usize) -> u32 {
    bit_length(n as u128)
}

/// The default budget `8·⌈log2(n + 1)⌉`.
pub fn default_budget(n: usize) -> u32 {
    8 * id_bits(n)
}

impl Widths {
    /// Widths for `n` vertices, parallel copies up to `max_copy`, weights up
    /// to `max_weight` and counters up to `max_index`.
    pub fn new(n: usize, max_copy: u16, max_weight: u64, max_index: u64, budget: Option<u32>) -> Self {
        Widths {
            id: id_bits(n),
            copy: bit_length(u128::from(max_copy)),
            weight: bit_length(u128::from(max_weight)),
            index: bit_length(u128::from(max_index)),
            budget: budget.unwrap_or_else(|| default_budget(n)),
        }
    }

    pub fn key_width(&self) -> u32 {
        2 * self.id + self.copy
    }

    /// Order-preserving packing of a dart key into `key_width` bits.
    pub fn pack_key(&self, k: DartKey) -> u64 {
        (u64::from(k.tail) << (self.id + self.copy)) | (u64::from(k.head) << self.copy) | u64::from(k.copy)
    }

    pub fn unpack_key(&self, x: u64) -> DartKey {
        let copy_mask = (1u64 << self.copy) - 1;
        let id_mask = (1u64 << self.id) - 1;
        DartKey::new(
            ((x >> (self.id + self.copy)) & id_mask) as u32,
            ((x >> self.copy) & id_mask) as u32,
            (x & copy_mask) as u16,
        )
    }

    pub fn id(&self, x: u32) -> Field {
        Field { value: u64::from(x), width: self.id }
    }

    pub fn key(&self, k: DartKey) -> Field {
        Field { value: self.pack_key(k), width: self.key_width() }
    }

    /// A key or "none", encoded as packed key + 1 or 0; same width as a key
    /// since ids stay below `2^id - 1`.
    pub fn opt_key(&self, k: Option<DartKey>) -> Field {
        Field { value: k.map_or(0, |k| self.pack_key(k) + 1), width: self.key_width() }
    }

    pub fn weight(&self, x: u64) -> Field {
        Field { value: x, width: self.weight }
    }

    pub fn index(&self, x: u64) -> Field {
        Field { value: x, width: self.index }
    }

    pub fn flag(&self, b: bool) -> Field {
        Field { value: u64::from(b), width: 1 }
    }

    /// A full-budget value.
    pub fn value(&self, x: u64) -> Field {
        Field { value: x, width: self.budget.min(64) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    pub value: u64,
    pub width: u32,
}

impl Field {
    fn fits(&self) -> bool {
        self.width >= 64 || self.value >> self.width == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Message {
    pub fields: Vec<Field>,
}

impl Message {
    pub fn new(fields: Vec<Field>) -> Self {
        Message { fields }
    }

    pub fn bits(&self) -> u32 {
        self.fields.iter().map(|f| f.width).sum()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.fields[i].value
    }
}

pub type Inbox = [(u32, Message)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Activity {
    /// Step again next round even without messages.
    Awake,
    /// Sleep until a message arrives.
    Sleep,
}

pub trait VertexProgram: Sync {
    type State: Send + Sync;

    /// One round at vertex `v`: read `inbox` (port, message), push
    /// `(port, message)` pairs to `out`.
    fn step(
        &self,
        round: u32,
        v: VertexId,
        state: &mut Self::State,
        inbox: &Inbox,
        out: &mut Vec<(u32, Message)>,
    ) -> Activity;
}

/// Order in which per-round vertex steps are executed. Results never depend
/// on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Schedule {
    #[default]
    Forward,
    Reverse,
    /// Data-parallel steps (sequential when the `parallel` feature is off).
    Parallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub max_rounds: u32,
    pub schedule: Schedule,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig { max_rounds: 1_000_000, schedule: Schedule::Forward }
    }
}

struct StepResult {
    v: VertexId,
    out: Vec<(u32, Message)>,
    activity: Activity,
}

fn step_all<P: VertexProgram>(
    program: &P,
    round: u32,
    states: &mut [P::State],
    active: &[VertexId],
    inboxes: &[Vec<(u32, Message)>],
    schedule: Schedule,
) -> Vec<StepResult> {
    let one = |v: VertexId, state: &mut P::State, inbox: &Inbox| {
        let mut out = Vec::new();
        let activity = program.step(round, v, state, inbox, &mut out);
        StepResult { v, out, activity }
    };
    match schedule {
        Schedule::Forward => {
            active.iter().zip(inboxes).map(|(&v, inbox)| one(v, &mut states[v as usize], inbox)).collect()
        }
        Schedule::Reverse => {
            let mut res: Vec<StepResult> =
                active.iter().zip(inboxes).rev().map(|(&v, inbox)| one(v, &mut states[v as usize], inbox)).collect();
            res.reverse();
            res
        }
        Schedule::Parallel => parallel_steps(states, active, inboxes, one),
    }
}

#[cfg(feature = "parallel")]
fn parallel_steps<S: Send, F>(
    states: &mut [S],
    active: &[VertexId],
    inboxes: &[Vec<(u32, Message)>],
    one: F,
) -> Vec<StepResult>
where
    F: Fn(VertexId, &mut S, &Inbox) -> StepResult + Sync + Send,
{
    use rayon::prelude::*;
    if active.len() < 64 {
        return active.iter().zip(inboxes).map(|(&v, inbox)| one(v, &mut states[v as usize], inbox)).collect();
    }
    // `active` is strictly increasing, so we can hand out disjoint &mut
    let mut slots: Vec<(VertexId, &mut S)> = Vec::with_capacity(active.len());
    let mut rest = states;
    let mut offset = 0u32;
    for &v in active {
        let (_, tail) = std::mem::take(&mut rest).split_at_mut((v - offset) as usize);
        let (head, tail) = tail.split_first_mut().expect("active vertex in range");
        slots.push((v, head));
        rest = tail;
        offset = v + 1;
    }
    slots.into_par_iter().zip(inboxes.par_iter()).map(|((v, s), inbox)| one(v, s, inbox)).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_steps<S, F>(
    states: &mut [S],
    active: &[VertexId],
    inboxes: &[Vec<(u32, Message)>],
    one: F,
) -> Vec<StepResult>
where
    F: Fn(VertexId, &mut S, &Inbox) -> StepResult,
{
    active.iter().zip(inboxes).map(|(&v, inbox)| one(v, &mut states[v as usize], inbox)).collect()
}

/// Runs `program` to quiescence. `states` holds one state per vertex and is
/// updated in place.
pub fn run<P: VertexProgram>(
    net: &Network,
    program: &P,
    states: &mut [P::State],
    cfg: &SimConfig,
    phase: &str,
) -> Result<PhaseTrace, SimError> {
    let n = net.len();
    assert_eq!(states.len(), n, "one state per vertex");
    let budget = net.widths.budget;
    let mut awake: Vec<bool> = vec![true; n];
    let mut pending: Vec<(VertexId, u32, Message)> = Vec::new();
    let mut trace = PhaseTrace::new(phase);
    let mut round = 0u32;
    loop {
        // inboxes for this round, grouped by receiver, ordered by port
        pending.sort_by_key(|(v, p, _)| (*v, *p));
        let mut active: Vec<VertexId> = Vec::new();
        let mut inboxes: Vec<Vec<(u32, Message)>> = Vec::new();
        let mut it = pending.drain(..).peekable();
        for v in 0..n as VertexId {
            let mut inbox = Vec::new();
            while let Some((_, p, m)) = it.next_if(|(w, _, _)| *w == v) {
                inbox.push((p, m));
            }
            if !inbox.is_empty() || awake[v as usize] {
                if !inbox.is_empty() {
                    trace.honest_rounds = round;
                }
                active.push(v);
                inboxes.push(inbox);
            }
        }
        drop(it);
        if active.is_empty() {
            break;
        }
        if round > cfg.max_rounds {
            return Err(SimError::RoundLimitExceeded(cfg.max_rounds));
        }
        let results = step_all(program, round, states, &active, &inboxes, cfg.schedule);
        for r in results {
            awake[r.v as usize] = r.activity == Activity::Awake;
            let mut per_port: Vec<(u32, u32)> = Vec::new();
            for (port, msg) in r.out {
                if let Some(f) = msg.fields.iter().find(|f| !f.fits()) {
                    return Err(SimError::OperatorOverflow {
                        round,
                        vertex: r.v,
                        value: u128::from(f.value),
                        width: f.width,
                    });
                }
                let bits = msg.bits();
                match per_port.iter_mut().find(|(p, _)| *p == port) {
                    Some((_, b)) => *b += bits,
                    None => per_port.push((port, bits)),
                }
                let target = net.ports(r.v)[port as usize];
                trace.messages += 1;
                pending.push((target.neighbor, target.back, msg));
            }
            for (port, bits) in per_port {
                if bits > budget {
                    return Err(SimError::BitBudgetExceeded { round, vertex: r.v, port, bits, budget });
                }
                trace.max_bits = trace.max_bits.max(bits);
            }
        }
        round += 1;
    }
    trace.charged_rounds = u64::from(trace.honest_rounds);
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen;

    /// Floods a token from vertex 0; records arrival round.
    struct Flood(Vec<u32>);

    impl VertexProgram for Flood {
        type State = Option<u32>;

        fn step(
            &self,
            round: u32,
            v: VertexId,
            state: &mut Option<u32>,
            inbox: &Inbox,
            out: &mut Vec<(u32, Message)>,
        ) -> Activity {
            let first = (round == 0 && v == 0) || (!inbox.is_empty() && state.is_none());
            if first {
                *state = Some(round);
                let senders: Vec<u32> = inbox.iter().map(|(p, _)| *p).collect();
                for p in 0..self.0[v as usize] {
                    if !senders.contains(&p) {
                        out.push((p, Message::new(vec![Field { value: 1, width: 1 }])));
                    }
                }
            }
            Activity::Sleep
        }
    }

    fn grid_net(s: u32) -> Network {
        let g = gen::grid(s, s).unwrap();
        Network::from_system(g.system(), Widths::new(g.n(), 0, 16, 64, None))
    }

    fn flood(net: &Network) -> Flood {
        Flood((0..net.len() as u32).map(|v| net.ports(v).len() as u32).collect())
    }

    #[test]
    fn flood_reaches_corner_at_eccentricity() {
        let net = grid_net(4);
        let mut states = vec![None; 16];
        let trace = run(&net, &flood(&net), &mut states, &SimConfig::default(), "flood").unwrap();
        assert_eq!(trace.honest_rounds, 6);
        assert_eq!(states[15], Some(6));
        assert_eq!(net.diameter(), 6);
    }

    #[test]
    fn schedules_agree() {
        let net = grid_net(9);
        let mut reference = vec![None; 81];
        let t0 = run(&net, &flood(&net), &mut reference, &SimConfig::default(), "flood").unwrap();
        for schedule in [Schedule::Reverse, Schedule::Parallel] {
            let mut states = vec![None; 81];
            let cfg = SimConfig { schedule, ..SimConfig::default() };
            let t = run(&net, &flood(&net), &mut states, &cfg, "flood").unwrap();
            assert_eq!(states, reference);
            assert_eq!(t, t0);
        }
    }

    struct Oversize(u32);

    impl VertexProgram for Oversize {
        type State = ();
        fn step(&self, round: u32, v: VertexId, _: &mut (), _: &Inbox, out: &mut Vec<(u32, Message)>) -> Activity {
            if round == 0 && v == 0 {
                out.push((0, Message::new(vec![Field { value: 0, width: self.0 }])));
            }
            Activity::Sleep
        }
    }

    #[test]
    fn oversize_message_is_rejected() {
        let net = grid_net(4);
        let budget = default_budget(16);
        assert_eq!(budget, 8 * 5);
        let mut states = vec![(); 16];
        assert!(run(&net, &Oversize(budget), &mut states, &SimConfig::default(), "ok").is_ok());
        let err = run(&net, &Oversize(budget + 1), &mut states, &SimConfig::default(), "big").unwrap_err();
        assert!(matches!(err, SimError::BitBudgetExceeded { round: 0, vertex: 0, port: 0, .. }));
    }

    struct Forever;

    impl VertexProgram for Forever {
        type State = ();
        fn step(&self, _: u32, _: VertexId, _: &mut (), _: &Inbox, _: &mut Vec<(u32, Message)>) -> Activity {
            Activity::Awake
        }
    }

    #[test]
    fn round_limit() {
        let net = grid_net(2);
        let cfg = SimConfig { max_rounds: 10, ..SimConfig::default() };
        let err = run(&net, &Forever, &mut [(), (), (), ()], &cfg, "spin").unwrap_err();
        assert_eq!(err, SimError::RoundLimitExceeded(10));
    }

    #[test]
    fn key_packing_preserves_order() {
        let w = Widths::new(100, 2, 10, 10, None);
        let keys = [DartKey::new(0, 5, 0), DartKey::new(0, 5, 2), DartKey::new(3, 1, 0), DartKey::new(99, 98, 1)];
        for pair in keys.windows(2) {
            assert!(w.pack_key(pair[0]) < w.pack_key(pair[1]));
        }
        for k in keys {
            assert_eq!(w.unpack_key(w.pack_key(k)), k);
        }
    }
}
