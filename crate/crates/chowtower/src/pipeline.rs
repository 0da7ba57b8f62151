//! Elaborates a tower description into actual geometry: the scroll, each
//! blow-up stage with its exceptional surface registered, and the final
//! double cover when one is declared.
//!
//! Stages are named X, X1, X2, ... Divisor expressions in the tower file
//! are resolved against the stage being built, so a center may use any
//! exceptional class created earlier and the branch sees the final stage.

use crate::blowup::{blow_up, Blowup};
use crate::bundle::Scroll;
use crate::cover::CoverModel;
use crate::threefold::{DivClass, ThreefoldModel};
use crate::tower::TowerSpec;
use crate::Result;

pub struct Pipeline {
    tower: TowerSpec,
    scroll: Scroll,
    blowups: Vec<Blowup>,
    cover: Option<CoverModel>,
}

impl Pipeline {
    pub fn build(tower: TowerSpec) -> Result<Self> {
        let scroll = Scroll::new(tower.base_index().clone(), tower.bundle())?;
        let twist = scroll.a_class();
        let mut blowups: Vec<Blowup> = Vec::new();
        for (k, step) in tower.blowups().iter().enumerate() {
            let current = blowups
                .last()
                .map(Blowup::model)
                .unwrap_or_else(|| scroll.model());
            let p = step.center.0.elaborate(current, Some(&twist))?;
            let q = step.center.1.elaborate(current, Some(&twist))?;
            let name = format!("X{}", k + 1);
            let mut b = blow_up(current, &name, &step.name, &p, &q)?;
            b.register_exceptional()?;
            blowups.push(b);
        }
        let cover = match tower.cover_branch() {
            Some(expr) => {
                let last = blowups
                    .last()
                    .map(Blowup::model)
                    .unwrap_or_else(|| scroll.model());
                let branch = expr.elaborate(last, Some(&twist))?;
                Some(CoverModel::new(last.clone(), branch)?)
            }
            None => None,
        };
        Ok(Pipeline {
            tower,
            scroll,
            blowups,
            cover,
        })
    }

    /// Builds the tower bundled with the crate.
    pub fn builtin() -> Result<Self> {
        Self::build(TowerSpec::builtin()?)
    }

    pub fn tower(&self) -> &TowerSpec {
        &self.tower
    }

    pub fn scroll(&self) -> &Scroll {
        &self.scroll
    }

    pub fn blowups(&self) -> &[Blowup] {
        &self.blowups
    }

    pub fn cover(&self) -> Option<&CoverModel> {
        self.cover.as_ref()
    }

    /// The bundle twist A, valid on every stage.
    pub fn twist(&self) -> DivClass {
        self.scroll.a_class()
    }

    /// All stages bottom up: the scroll first, then one per blow-up.
    pub fn stages(&self) -> Vec<&ThreefoldModel> {
        let mut v = vec![self.scroll.model()];
        v.extend(self.blowups.iter().map(Blowup::model));
        v
    }

    pub fn final_model(&self) -> &ThreefoldModel {
        self.blowups
            .last()
            .map(Blowup::model)
            .unwrap_or_else(|| self.scroll.model())
    }
}
