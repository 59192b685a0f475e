// SPDX-License-Identifier: Apache-2.0

//! Criterion benchmarks for `ncdomain-core`; see `benches/`.
