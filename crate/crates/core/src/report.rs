use alloc::string::String;
use alloc::vec::Vec;

/// One located failure inside a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub at: String,
    pub value: String,
}

/// Outcome of a mechanical check. `order` is the ħ-order the comparison was made at, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub order: Option<usize>,
    pub defects: Vec<Defect>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), pass: true, order: None, defects: Vec::new() }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = Some(match self.order {
            Some(o) => o.min(order),
            None => order,
        });
        self
    }

    pub fn note_order(&mut self, order: usize) {
        self.order = Some(self.order.map_or(order, |o| o.min(order)));
    }

    pub fn fail(&mut self, at: impl Into<String>, value: impl Into<String>) {
        self.pass = false;
        self.defects.push(Defect { at: at.into(), value: value.into() });
    }

    pub fn absorb(&mut self, other: &Check) {
        if !other.pass {
            self.pass = false;
        }
        for d in &other.defects {
            self.defects.push(Defect { at: alloc::format!("{}: {}", other.name, d.at), value: d.value.clone() });
        }
        if let Some(o) = other.order {
            self.note_order(o);
        }
    }

    pub fn all(name: impl Into<String>, parts: &[Check]) -> Check {
        let mut c = Check::new(name);
        for p in parts {
            c.absorb(p);
        }
        c
    }
}
