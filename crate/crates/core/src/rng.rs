//! Pinned counter-based pseudo-random generator with splittable substreams.
//!
//! Everything stochastic in this crate draws from the generator defined
//! here, never from platform or library RNGs, so that results are
//! bit-identical across operating systems, architectures, and versions of
//! this crate. The algorithm is therefore part of the public contract and
//! must not change:
//!
//! * The core generator is splitmix64: the state advances by the 64-bit
//!   golden-ratio constant `0x9E3779B97F4A7C15` and each output is the
//!   `mix64` finalizer of the new state.
//! * `f64` uniforms take the top 53 bits of one output: `(u >> 11) * 2^-53`,
//!   uniform on `[0, 1)`.
//! * Normals use the Box–Muller cosine branch and consume exactly two
//!   uniforms each: `sqrt(-2 ln(1 - u1)) * cos(2 pi u2)`.
//! * Substreams are derived by hashing a `(seed, path)` pair with `mix64`
//!   (see [`stream_seed`]); replication `k` of an experiment uses the
//!   substream at path `[.., k]`, which makes parallel replication loops
//!   deterministic regardless of scheduling.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
/// Domain-separation salt so `stream_seed(s, &[])` differs from raw `s`.
const STREAM_SALT: u64 = 0x5B4C_F5BD_4B58_00A5;

/// The 64-bit finalizer from splitmix64 (Stafford's Mix13 variant).
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the seed of a named substream from a master seed and a path of
/// stream indices.
///
/// The derivation is a chained `mix64` hash, so distinct paths give
/// decorrelated streams and the scheme nests: an experiment can hand
/// `stream_seed(seed, &[rep])` to a replication which derives its own
/// substreams from it.
pub fn stream_seed(seed: u64, path: &[u64]) -> u64 {
    let mut s = mix64(seed ^ STREAM_SALT);
    for &k in path {
        s = mix64(s ^ mix64(k.wrapping_mul(GOLDEN)));
    }
    s
}

/// Splitmix64 generator state.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    /// Generator seeded directly with `seed`.
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    /// Generator for the substream of `seed` at `path`; see [`stream_seed`].
    pub fn substream(seed: u64, path: &[u64]) -> Self {
        Rng::new(stream_seed(seed, path))
    }

    /// Next raw 64-bit output.
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * 2f64.powi(-53)
    }

    /// Standard normal via the Box–Muller cosine branch.
    ///
    /// Consumes exactly two uniforms; `1 - u1` keeps the logarithm's
    /// argument in `(0, 1]`.
    #[inline]
    pub fn next_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Uniform integer in `[0, n)`, unbiased (Lemire multiply-shift with
    /// rejection). `n` must be nonzero.
    pub fn next_below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        let mut m = u128::from(self.next_u64()) * u128::from(n);
        let mut low = m as u64;
        if low < n {
            let threshold = n.wrapping_neg() % n;
            while low < threshold {
                m = u128::from(self.next_u64()) * u128::from(n);
                low = m as u64;
            }
        }
        (m >> 64) as u64
    }

    /// In-place Fisher–Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }

    /// A uniformly random permutation of `{0, .., n-1}`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }

    /// `count` indices drawn without replacement from `{0, .., n-1}`,
    /// in draw order (partial Fisher–Yates).
    pub fn sample_without_replacement(&mut self, n: usize, count: usize) -> Vec<usize> {
        assert!(count <= n, "cannot draw {count} from {n} without replacement");
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..count {
            let j = i + self.next_below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(count);
        pool
    }
}
