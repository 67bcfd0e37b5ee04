//! Node programs for the cut algorithms.
//!
//! Programs that need per-node input beyond the ID (port orientations, an
//! initial side) look it up by ID, which is all a node knows about itself.

use std::collections::HashMap;

use super::{
    bit_length, default_max_rounds, run, Bandwidth, Message, NodeProgram, RoundTrace, Step,
};
use crate::algorithms::median_side;
use crate::error::{Error, Result};
use crate::graph::{Cut, Labelling, Orientation, RegularGraph, Side};

/// Zero rounds: even IDs go Left, odd IDs go Right.
pub struct IdParity;

impl NodeProgram for IdParity {
    type State = u64;

    fn init(&self, id: u64, _: usize) -> u64 {
        id
    }

    fn step(&self, id: &mut u64, _: usize, _: &[Option<Message>]) -> Step {
        Step::output(if (*id).is_multiple_of(2) {
            Side::Left
        } else {
            Side::Right
        })
    }
}

/// Median rule with IDs sent as `width`-bit words split into `chunk`-bit
/// pieces, most significant first. With `chunk >= width` this is the
/// one-round median.
#[derive(Clone, Copy, Debug)]
pub struct BitSerialMedian {
    pub width: u32,
    pub chunk: u32,
}

pub struct MedianState {
    id: u64,
    received: Vec<u64>,
}

impl BitSerialMedian {
    pub fn new(width: u32, chunk: u32) -> Self {
        assert!(chunk >= 1 && (1..=64).contains(&width));
        BitSerialMedian {
            width,
            chunk: chunk.min(width),
        }
    }

    pub fn rounds(&self) -> usize {
        self.width.div_ceil(self.chunk) as usize
    }

    /// Bits of chunk `i` (the last chunk may be narrower).
    fn chunk_bits(&self, i: usize) -> u32 {
        let sent = self.chunk * i as u32;
        self.chunk.min(self.width - sent)
    }

    fn chunk_of(&self, id: u64, i: usize) -> Message {
        let bits = self.chunk_bits(i);
        let shift = self.width - self.chunk * i as u32 - bits;
        let mask = if bits == 64 {
            u64::MAX
        } else {
            (1 << bits) - 1
        };
        Message::new((id >> shift) & mask, bits)
    }
}

impl NodeProgram for BitSerialMedian {
    type State = MedianState;

    fn init(&self, id: u64, degree: usize) -> MedianState {
        assert!(
            bit_length(id) <= self.width,
            "ID {id} wider than {} bits",
            self.width
        );
        MedianState {
            id,
            received: vec![0; degree],
        }
    }

    fn step(&self, state: &mut MedianState, round: usize, inbox: &[Option<Message>]) -> Step {
        if round > 0 {
            let bits = self.chunk_bits(round - 1);
            for (acc, msg) in state.received.iter_mut().zip(inbox) {
                let msg = msg.expect("every neighbour sends every chunk");
                *acc = (*acc << bits) | msg.value();
            }
        }
        if round < self.rounds() {
            Step::send_all(state.received.len(), self.chunk_of(state.id, round))
        } else {
            Step::output(median_side(state.id, &mut state.received))
        }
    }
}

fn sides_from_inbox(inbox: &[Option<Message>]) -> impl Iterator<Item = Side> + '_ {
    inbox.iter().map(|m| {
        if m.expect("all neighbours report their side").value() == 1 {
            Side::Left
        } else {
            Side::Right
        }
    })
}

fn side_message(side: Side) -> Message {
    Message::bit(side.is_left())
}

/// Oriented median followed by `flips` unstable-vertex flips. Each node knows
/// which of its ports carry outgoing arcs; sides are exchanged as single bits.
pub struct OrientedMedianFlips {
    out_ports: HashMap<u64, Vec<bool>>,
    flips: usize,
}

impl OrientedMedianFlips {
    pub fn new(o: &Orientation, lab: &Labelling, flips: usize) -> Result<Self> {
        if lab.len() != o.n() {
            return Err(Error::InvalidInput(format!(
                "labelling covers {} vertices, graph has {}",
                lab.len(),
                o.n()
            )));
        }
        let out_ports = (0..o.n())
            .map(|v| {
                let ports = o
                    .graph()
                    .neighbors(v)
                    .iter()
                    .map(|&w| o.has_arc(v, w))
                    .collect();
                (lab.id(v), ports)
            })
            .collect();
        Ok(OrientedMedianFlips { out_ports, flips })
    }
}

impl NodeProgram for OrientedMedianFlips {
    type State = Side;

    fn init(&self, id: u64, _: usize) -> Side {
        let ports = &self.out_ports[&id];
        let out = ports.iter().filter(|&&b| b).count();
        if 2 * out > ports.len() {
            Side::Left
        } else {
            Side::Right
        }
    }

    fn step(&self, side: &mut Side, round: usize, inbox: &[Option<Message>]) -> Step {
        if round > 0 && sides_from_inbox(inbox).all(|s| s == *side) {
            *side = side.flipped();
        }
        if round == self.flips {
            Step::output(*side)
        } else {
            Step::send_all(inbox.len(), side_message(*side))
        }
    }
}

/// `rounds` rounds of distributed FLIP from a given cut.
pub struct DistributedFlip {
    initial: HashMap<u64, Side>,
    rounds: usize,
}

impl DistributedFlip {
    pub fn new(lab: &Labelling, start: &Cut, rounds: usize) -> Result<Self> {
        if lab.len() != start.len() {
            return Err(Error::InvalidInput(format!(
                "labelling covers {} vertices, cut covers {}",
                lab.len(),
                start.len()
            )));
        }
        let initial = (0..lab.len()).map(|v| (lab.id(v), start.side(v))).collect();
        Ok(DistributedFlip { initial, rounds })
    }
}

impl NodeProgram for DistributedFlip {
    type State = Side;

    fn init(&self, id: u64, _: usize) -> Side {
        self.initial[&id]
    }

    fn step(&self, side: &mut Side, round: usize, inbox: &[Option<Message>]) -> Step {
        if round > 0 {
            let same = sides_from_inbox(inbox).filter(|s| s == side).count();
            if 2 * same > inbox.len() {
                *side = side.flipped();
            }
        }
        if round == self.rounds {
            Step::output(*side)
        } else {
            Step::send_all(inbox.len(), side_message(*side))
        }
    }
}

fn id_width(lab: &Labelling) -> u32 {
    bit_length(lab.max_id()).max(1)
}

/// One-round median in the LOCAL model; messages are `bitlen(max_id)` bits.
pub fn run_median(g: &RegularGraph, lab: &Labelling) -> Result<(Cut, RoundTrace)> {
    let width = id_width(lab);
    run_median_program(
        g,
        lab,
        BitSerialMedian::new(width, width),
        Bandwidth::Unlimited,
    )
}

/// Median under CONGEST(`b`): IDs travel in `b`-bit chunks over
/// `ceil(bitlen(max_id) / b)` rounds.
pub fn run_bit_serialized_median(
    g: &RegularGraph,
    lab: &Labelling,
    b: u32,
) -> Result<(Cut, RoundTrace)> {
    if b == 0 {
        return Err(Error::InvalidParameter(
            "bandwidth must be at least 1 bit".into(),
        ));
    }
    let width = id_width(lab);
    run_median_program(g, lab, BitSerialMedian::new(width, b), Bandwidth::Bits(b))
}

fn run_median_program(
    g: &RegularGraph,
    lab: &Labelling,
    program: BitSerialMedian,
    limit: Bandwidth,
) -> Result<(Cut, RoundTrace)> {
    if g.degree().is_multiple_of(2) {
        return Err(Error::UnsupportedDegree {
            degree: g.degree(),
            reason: "median of an even number of IDs is not defined",
        });
    }
    let max_rounds = default_max_rounds(g.n()).max(program.rounds());
    run(&program, g, lab, limit, max_rounds)
}

pub fn run_oriented_median_flips(
    o: &Orientation,
    lab: &Labelling,
    flips: usize,
    limit: Bandwidth,
) -> Result<(Cut, RoundTrace)> {
    if o.graph().degree().is_multiple_of(2) {
        return Err(Error::UnsupportedDegree {
            degree: o.graph().degree(),
            reason: "zero-deficit vertices have no side",
        });
    }
    let program = OrientedMedianFlips::new(o, lab, flips)?;
    run(&program, o.graph(), lab, limit, flips)
}

pub fn run_distributed_flip(
    g: &RegularGraph,
    lab: &Labelling,
    start: &Cut,
    rounds: usize,
    limit: Bandwidth,
) -> Result<(Cut, RoundTrace)> {
    let program = DistributedFlip::new(lab, start, rounds)?;
    run(&program, g, lab, limit, rounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{distributed_flip_step, median_cut, oriented_median_plus_flips};
    use crate::generators::{make_double_circulant, make_random_orientation, make_random_regular};

    #[test]
    fn parity_program_uses_no_rounds() {
        let g = make_double_circulant(6, 3).unwrap();
        let (cut, trace) = run(
            &IdParity,
            &g,
            &Labelling::identity(12),
            Bandwidth::Bits(1),
            0,
        )
        .unwrap();
        assert_eq!(trace.rounds_used, 0);
        assert_eq!(trace.total_bits, 0);
        assert_eq!(cut.side(0), Side::Right);
        assert_eq!(cut.side(1), Side::Left);
    }

    #[test]
    fn median_runs_in_one_round() {
        let g = make_double_circulant(12, 5).unwrap();
        let lab = Labelling::identity(24);
        let (cut, trace) = run_median(&g, &lab).unwrap();
        assert_eq!(trace.rounds_used, 1);
        assert_eq!(trace.max_message_bits, bit_length(24));
        assert_eq!(cut, median_cut(&g, &lab).unwrap());
    }

    #[test]
    fn one_bit_median_takes_bitlen_rounds() {
        let g = make_double_circulant(12, 5).unwrap();
        let mut ids: Vec<u64> = (1..=24).collect();
        ids[7] = 24 * 24 * 24;
        let lab = Labelling::new(ids).unwrap();
        let (cut, trace) = run_bit_serialized_median(&g, &lab, 1).unwrap();
        assert_eq!(trace.rounds_used, 14);
        assert_eq!(trace.max_message_bits, 1);
        assert_eq!(cut, median_cut(&g, &lab).unwrap());
        for b in 2..=14 {
            let (c, t) = run_bit_serialized_median(&g, &lab, b).unwrap();
            assert_eq!(c, cut);
            assert_eq!(t.rounds_used, 14usize.div_ceil(b as usize));
        }
    }

    #[test]
    fn too_narrow_channel_is_congestion() {
        let g = make_double_circulant(6, 3).unwrap();
        let width = bit_length(12);
        let program = BitSerialMedian::new(width, width);
        let err = run(
            &program,
            &g,
            &Labelling::identity(12),
            Bandwidth::Bits(2),
            10,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Congestion {
                round: 1,
                bits: 4,
                limit: 2,
                ..
            }
        ));
    }

    #[test]
    fn oriented_flips_match_direct_version() {
        for seed in 0..10 {
            let g = make_random_regular(30, 5, seed).unwrap();
            let o = make_random_orientation(&g, seed);
            let lab = Labelling::identity(30);
            let direct = oriented_median_plus_flips(&o, 3).unwrap();
            for k in 0..=3 {
                let (cut, trace) =
                    run_oriented_median_flips(&o, &lab, k, Bandwidth::Bits(1)).unwrap();
                assert_eq!(&cut, &direct.cuts[k]);
                assert_eq!(trace.rounds_used, k);
            }
        }
    }

    #[test]
    fn distributed_flip_matches_direct_version() {
        let g = make_random_regular(40, 3, 5).unwrap();
        let lab = Labelling::identity(40);
        let start = crate::algorithms::random_cut(40, 1);
        let mut expected = start.clone();
        for _ in 0..4 {
            expected = distributed_flip_step(&g, &expected);
        }
        let (cut, _) = run_distributed_flip(&g, &lab, &start, 4, Bandwidth::Bits(1)).unwrap();
        assert_eq!(cut, expected);
    }

    #[test]
    fn even_degree_median_is_rejected() {
        let g = crate::generators::make_circulant(12, 4).unwrap();
        assert!(matches!(
            run_median(&g, &Labelling::identity(12)),
            Err(Error::UnsupportedDegree { degree: 4, .. })
        ));
    }
}
