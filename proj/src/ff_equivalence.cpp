// SPDX-License-Identifier: Apache-2.0
#include "scanforge/ff_equivalence.hpp"

#include <random>

namespace scanforge {

std::vector<sw::Phase> to_phases(const FFSequence& seq) {
  std::vector<sw::Phase> phases;
  phases.reserve(2 * seq.size());
  for (const auto& c : seq) {
    phases.push_back({Logic::One, c.di, c.si, c.se});
    phases.push_back({Logic::Zero, c.di, c.si, c.se});
  }
  return phases;
}

std::vector<Logic> behavioral_q(FFKind kind, const FFSequence& seq) {
  std::vector<Logic> q;
  q.reserve(2 * seq.size());
  FFState st;
  for (const auto& c : seq) {
    st = ff_step(st, kind, c.di, c.si, c.se, ClockEdge::Rising);
    q.push_back(st.q());
    st = ff_step(st, kind, c.di, c.si, c.se, ClockEdge::Falling);
    q.push_back(st.q());
  }
  return q;
}

namespace {

FFCycleInputs decode(std::uint64_t bits) {
  return {to_logic(bits & 1), to_logic(bits & 2), to_logic(bits & 4)};
}

}  // namespace

std::vector<FFSequence> exhaustive_sequences(std::size_t length) {
  std::vector<FFSequence> out;
  const std::uint64_t total = std::uint64_t{1} << (3 * length);
  out.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    FFSequence seq(length);
    for (std::size_t k = 0; k < length; ++k) seq[k] = decode(code >> (3 * k));
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<FFSequence> random_sequences(std::size_t count, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FFSequence> out(count, FFSequence(length));
  for (auto& seq : out)
    for (auto& c : seq) c = decode(rng());
  return out;
}

EquivalenceReport check_equivalence(const sw::TransistorNetwork& net, FFKind kind,
                                    const std::vector<FFSequence>& sequences) {
  EquivalenceReport rep;
  for (const auto& seq : sequences) {
    auto phases = to_phases(seq);
    auto expected = behavioral_q(kind, seq);
    auto actual = sw::run_clocked(net, phases);
    ++rep.sequences;
    bool bad = false;
    for (std::size_t p = 0; p < expected.size(); ++p) {
      if (expected[p] == Logic::X) continue;
      ++rep.phases_compared;
      if (actual[p] != expected[p] && !bad) {
        bad = true;
        if (!rep.first_mismatch) {
          std::string desc = "phase " + std::to_string(p) + ": expected " + to_char(expected[p]) +
                             ", switch level gave " + to_char(actual[p]) + "; (di,si,se) =";
          for (const auto& c : seq)
            desc += std::string(" ") + to_char(c.di) + to_char(c.si) + to_char(c.se);
          rep.first_mismatch = desc;
        }
      }
    }
    if (bad) ++rep.mismatches;
  }
  return rep;
}

}  // namespace scanforge
