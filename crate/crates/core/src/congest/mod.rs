//! Synchronous message-passing engine with per-message bit accounting.
//!
//! Nodes see only their ID, their degree and their ports (port `p` of `v` is
//! the `p`-th entry of `v`'s sorted neighbour list). Every round, all messages
//! are produced from the previous round's state, so node evaluation order is
//! irrelevant and steps run in parallel.

pub mod programs;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cut, Labelling, RegularGraph, Side};

/// A message of `bits` bits carrying the low bits of `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Message {
    value: u64,
    bits: u32,
}

impl Message {
    pub fn new(value: u64, bits: u32) -> Self {
        assert!(bits <= 64, "messages carry at most 64 bits");
        assert!(
            bits == 64 || value >> bits == 0,
            "value {value} does not fit in {bits} bits"
        );
        Message { value, bits }
    }

    pub fn bit(b: bool) -> Self {
        Message::new(u64::from(b), 1)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }
}

/// What a node does in one step.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Step {
    /// One slot per port; an empty vector sends nothing.
    pub outbox: Vec<Option<Message>>,
    /// Final output. Once set the node is never stepped again.
    pub output: Option<Side>,
}

impl Step {
    pub fn send_all(degree: usize, msg: Message) -> Self {
        Step {
            outbox: vec![Some(msg); degree],
            output: None,
        }
    }

    pub fn output(side: Side) -> Self {
        Step {
            outbox: Vec::new(),
            output: Some(side),
        }
    }
}

/// Per-node behaviour. `init` sees only the node's ID and degree; `step` sees
/// its own state and the messages received on each port in the last round
/// (all `None` in round 0).
pub trait NodeProgram: Sync {
    type State: Send;

    fn init(&self, id: u64, degree: usize) -> Self::State;

    fn step(&self, state: &mut Self::State, round: usize, inbox: &[Option<Message>]) -> Step;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bandwidth {
    Unlimited,
    /// CONGEST(B): every message has at most `B` bits.
    Bits(u32),
}

impl Bandwidth {
    fn allows(self, bits: u32) -> bool {
        match self {
            Bandwidth::Unlimited => true,
            Bandwidth::Bits(limit) => bits <= limit,
        }
    }
}

/// Per-round traffic is logged for at most this many rounds.
pub const MAX_LOGGED_ROUNDS: usize = 10_000;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub rounds_used: usize,
    pub max_message_bits: u32,
    pub total_bits: u64,
    /// Bits delivered in rounds `1..`, truncated at [`MAX_LOGGED_ROUNDS`].
    pub bits_per_round: Vec<u64>,
}

pub fn default_max_rounds(n: usize) -> usize {
    4 * n
}

/// Number of bits needed to write `x` in binary (0 for 0).
pub fn bit_length(x: u64) -> u32 {
    64 - x.leading_zeros()
}

/// Runs `program` on every vertex until all have produced an output.
pub fn run<P: NodeProgram>(
    program: &P,
    g: &RegularGraph,
    lab: &Labelling,
    limit: Bandwidth,
    max_rounds: usize,
) -> Result<(Cut, RoundTrace)> {
    let n = g.n();
    if lab.len() != n {
        return Err(Error::InvalidInput(format!(
            "labelling covers {} vertices, graph has {n}",
            lab.len()
        )));
    }
    // reverse_port[v][p] = port of v at its p-th neighbour
    let reverse_port: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&w| {
                    g.neighbors(w)
                        .binary_search(&v)
                        .expect("adjacency is symmetric")
                })
                .collect()
        })
        .collect();

    let mut states: Vec<P::State> = (0..n)
        .map(|v| program.init(lab.id(v), g.degree()))
        .collect();
    let mut outputs: Vec<Option<Side>> = vec![None; n];
    let mut inboxes: Vec<Vec<Option<Message>>> = vec![vec![None; g.degree()]; n];
    let mut trace = RoundTrace::default();

    let mut round = 0;
    loop {
        let steps: Vec<Option<Step>> = states
            .par_iter_mut()
            .zip(inboxes.par_iter())
            .zip(outputs.par_iter())
            .map(|((state, inbox), out)| out.is_none().then(|| program.step(state, round, inbox)))
            .collect();
        for (v, step) in steps.iter().enumerate() {
            if let Some(side) = step.as_ref().and_then(|s| s.output) {
                outputs[v] = Some(side);
            }
        }
        if outputs.iter().all(Option::is_some) {
            break;
        }
        if round == max_rounds {
            return Err(Error::NonTermination {
                max_rounds,
                pending: (0..n).filter(|&v| outputs[v].is_none()).collect(),
            });
        }
        round += 1;
        for inbox in inboxes.iter_mut() {
            inbox.iter_mut().for_each(|slot| *slot = None);
        }
        let mut round_bits = 0u64;
        for (v, step) in steps.into_iter().enumerate() {
            let Some(step) = step else { continue };
            for (port, msg) in step.outbox.into_iter().enumerate() {
                let Some(msg) = msg else { continue };
                if !limit.allows(msg.bits()) {
                    let Bandwidth::Bits(limit) = limit else {
                        unreachable!("unlimited bandwidth allows every message")
                    };
                    return Err(Error::Congestion {
                        node: v,
                        port,
                        round,
                        bits: msg.bits(),
                        limit,
                    });
                }
                let w = g.neighbors(v)[port];
                inboxes[w][reverse_port[v][port]] = Some(msg);
                round_bits += u64::from(msg.bits());
                trace.max_message_bits = trace.max_message_bits.max(msg.bits());
            }
        }
        trace.total_bits += round_bits;
        if trace.bits_per_round.len() < MAX_LOGGED_ROUNDS {
            trace.bits_per_round.push(round_bits);
        }
    }
    trace.rounds_used = round;
    let sides = outputs
        .into_iter()
        .map(|s| s.expect("all nodes output"))
        .collect();
    Ok((Cut::new(sides), trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Never outputs.
    struct Silent;

    impl NodeProgram for Silent {
        type State = ();
        fn init(&self, _: u64, _: usize) {}
        fn step(&self, _: &mut (), _: usize, _: &[Option<Message>]) -> Step {
            Step::default()
        }
    }

    /// Sends a 3-bit message once, then outputs.
    struct Wide;

    impl NodeProgram for Wide {
        type State = ();
        fn init(&self, _: u64, _: usize) {}
        fn step(&self, _: &mut (), round: usize, _: &[Option<Message>]) -> Step {
            if round == 0 {
                Step::send_all(3, Message::new(5, 3))
            } else {
                Step::output(Side::Left)
            }
        }
    }

    fn k4() -> RegularGraph {
        RegularGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn non_termination_is_reported() {
        let err = run(
            &Silent,
            &k4(),
            &Labelling::identity(4),
            Bandwidth::Unlimited,
            3,
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::NonTermination {
                max_rounds: 3,
                pending: vec![0, 1, 2, 3]
            }
        );
    }

    #[test]
    fn congestion_is_reported_with_location() {
        let err = run(
            &Wide,
            &k4(),
            &Labelling::identity(4),
            Bandwidth::Bits(2),
            10,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Congestion {
                node: 0,
                port: 0,
                round: 1,
                bits: 3,
                limit: 2
            }
        ));
        let (_, trace) = run(
            &Wide,
            &k4(),
            &Labelling::identity(4),
            Bandwidth::Bits(3),
            10,
        )
        .unwrap();
        assert_eq!(trace.rounds_used, 1);
        assert_eq!(trace.total_bits, 12 * 3);
        assert_eq!(trace.bits_per_round, vec![36]);
    }

    #[test]
    fn bit_lengths() {
        assert_eq!(bit_length(0), 0);
        assert_eq!(bit_length(1), 1);
        assert_eq!(bit_length(8), 4);
        assert_eq!(bit_length(13_824), 14);
    }

    #[test]
    #[should_panic]
    fn oversized_message_value_panics() {
        Message::new(8, 3);
    }
}
