use super::{Poly, PolyMatrix, RingCtx, RingError};

/// A `Q`-algebra map `Q[source] -> Q[target]`, given by the images of the source variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingMap {
    source: RingCtx,
    target: RingCtx,
    images: Vec<Poly>,
}

impl RingMap {
    pub fn new(source: RingCtx, target: RingCtx, images: Vec<Poly>) -> Result<Self, RingError> {
        if images.len() != source.nvars() {
            return Err(RingError::VariableCountMismatch {
                left: source.nvars(),
                right: images.len(),
            });
        }
        if let Some(p) = images.iter().find(|p| p.nvars() != target.nvars()) {
            return Err(RingError::VariableCountMismatch {
                left: target.nvars(),
                right: p.nvars(),
            });
        }
        Ok(RingMap {
            source,
            target,
            images,
        })
    }

    /// Parses one image per source variable in the target ring.
    pub fn parse<S: AsRef<str>>(
        source: RingCtx,
        target: RingCtx,
        images: &[S],
    ) -> Result<Self, RingError> {
        let images = images
            .iter()
            .map(|s| target.parse(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(ctx: RingCtx) -> Self {
        let images = (0..ctx.nvars())
            .map(|i| Poly::var(i, ctx.nvars()))
            .collect();
        RingMap {
            source: ctx.clone(),
            target: ctx,
            images,
        }
    }

    /// The inclusion sending each source variable to the target variable with the
    /// name given by `rename` (or its own name).
    pub fn inclusion(
        source: RingCtx,
        target: RingCtx,
        rename: impl Fn(&str) -> String,
    ) -> Result<Self, RingError> {
        let images = source
            .vars()
            .iter()
            .map(|v| {
                let name = rename(v);
                target
                    .var(&name)
                    .ok_or(RingError::UnknownVariable { name, position: 0 })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &RingCtx {
        &self.source
    }

    pub fn target(&self) -> &RingCtx {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly, RingError> {
        p.substitute(&self.images, self.target.nvars())
    }

    pub fn apply_matrix(&self, m: &PolyMatrix) -> Result<PolyMatrix, RingError> {
        m.try_map_into(self.target.nvars(), |p| self.apply(p))
    }
}
