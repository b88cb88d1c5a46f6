//! Systems `F: R^n -> R^n` for the bisection solver, with a small built-in registry.

/// A map `F: R^n -> R^n` whose zero is sought. Evaluation must be reentrant.
pub trait SystemFunction: Send + Sync {
    fn dimension(&self) -> usize;
    fn name(&self) -> &str;
    fn evaluate(&self, x: &[f64]) -> Vec<f64>;
}

type BoxedFn = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A [`SystemFunction`] backed by a closure.
pub struct FnSystem {
    name: String,
    dimension: usize,
    f: BoxedFn,
}

impl FnSystem {
    pub fn new<F>(name: impl Into<String>, dimension: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            dimension,
            f: Box::new(f),
        }
    }
}

impl std::fmt::Debug for FnSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FnSystem")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .finish_non_exhaustive()
    }
}

impl SystemFunction for FnSystem {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        (self.f)(x)
    }
}

const NAMES: &[&str] = &[
    "linear-0.7",
    "no-root-1d",
    "cubic-1d",
    "shifted-identity-2d",
    "separable-cubic-3d",
];

/// Names accepted by [`lookup`].
pub fn registry_names() -> &'static [&'static str] {
    NAMES
}

/// Built-in test systems by name.
///
/// * `linear-0.7`: `x - 0.7`
/// * `no-root-1d`: `x + 10`
/// * `cubic-1d`: `x^3 - 2x - 5` (real root near 2.0945514815)
/// * `shifted-identity-2d`: `(x - 0.25, y - 0.25)`
/// * `separable-cubic-3d`: `(x^3 - 0.001, y - 0.2, tanh(z - 0.3))`
pub fn lookup(name: &str) -> Option<FnSystem> {
    let sys = match name {
        "linear-0.7" => FnSystem::new(name, 1, |x| vec![x[0] - 0.7]),
        "no-root-1d" => FnSystem::new(name, 1, |x| vec![x[0] + 10.0]),
        "cubic-1d" => FnSystem::new(name, 1, |x| vec![x[0].powi(3) - 2.0 * x[0] - 5.0]),
        "shifted-identity-2d" => FnSystem::new(name, 2, |x| vec![x[0] - 0.25, x[1] - 0.25]),
        "separable-cubic-3d" => FnSystem::new(name, 3, |x| {
            vec![x[0].powi(3) - 0.001, x[1] - 0.2, (x[2] - 0.3).tanh()]
        }),
        _ => return None,
    };
    Some(sys)
}
