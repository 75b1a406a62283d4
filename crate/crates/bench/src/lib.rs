//! Criterion benchmarks for `heston-geom`; see `benches/`.
