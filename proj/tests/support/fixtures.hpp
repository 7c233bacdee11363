#pragma once

#include <random>
#include <vector>

#include "seqsum/dataset.hpp"
#include "seqsum/summary.hpp"

namespace testsupport {

// The three-sequence dataset {[A,B,C],[A,B,D],[A,C,D]} used by the worked
// examples: rank-divide-trim at ms=0.5 gives Root->A(3)->B(2).
seqsum::Dataset worked_dataset();

// {[A,B],[A,B]} — duplicate pair; any lambda < 1 merges it into one cluster.
seqsum::Dataset duplicate_pair_dataset();

// {[A,B]} — single two-event sequence.
seqsum::Dataset single_ab_dataset();

// A deterministic 100-patient emergency-room corpus: 6 event types, lengths
// 3..16 with median 4.5, every visit starts [Arrival, Emergency] and exactly
// 37 visits end in Discharge-Alive.
seqsum::Dataset emergency_dataset();

// Hand-built Tree summary over that corpus: hidden root(100) ->
// Emergency(100) -> Discharge-Alive(37), edge supports 100 and 37.
seqsum::Summary emergency_summary();

// Random dataset with num sequences in [1,max_seqs], alphabet size in
// [1,max_types], lengths in [1,max_len]. Uses raw mt19937 draws only.
seqsum::Dataset random_dataset(std::mt19937& gen, int max_seqs, int max_types, int max_len);

// Random valid DAG summary (edges only between increasing ids, supports
// consistent); node count in [2,10]. For layout/insight property tests.
seqsum::Summary random_dag_summary(std::mt19937& gen);

}  // namespace testsupport
