use rand::Rng;

/// Picks a measurement outcome index given the outcome probabilities.
pub trait OutcomeChooser {
    fn choose(&mut self, probabilities: &[f64]) -> usize;
}

/// Inverse-CDF sampling from a random generator.
pub struct RngChooser<'a, R: ?Sized>(pub &'a mut R);

impl<R: Rng + ?Sized> OutcomeChooser for RngChooser<'_, R> {
    fn choose(&mut self, probabilities: &[f64]) -> usize {
        let total: f64 = probabilities.iter().sum();
        let mut u = self.0.random::<f64>() * total;
        let mut last = 0;
        for (i, &p) in probabilities.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            if u < p {
                return i;
            }
            u -= p;
            last = i;
        }
        last
    }
}

/// Replays a fixed list of outcome indices; panics when exhausted.
#[derive(Clone, Debug, Default)]
pub struct ScriptedChooser {
    script: Vec<usize>,
    next: usize,
}

impl ScriptedChooser {
    pub fn new(script: Vec<usize>) -> Self {
        Self { script, next: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.script.len() - self.next
    }
}

impl OutcomeChooser for ScriptedChooser {
    fn choose(&mut self, probabilities: &[f64]) -> usize {
        let i = *self
            .script
            .get(self.next)
            .expect("scripted outcomes exhausted");
        assert!(i < probabilities.len(), "scripted outcome {i} out of range");
        self.next += 1;
        i
    }
}

/// Wraps another chooser and records every decision.
pub struct RecordingChooser<C> {
    pub inner: C,
    pub record: Vec<usize>,
}

impl<C> RecordingChooser<C> {
    pub fn new(inner: C) -> Self {
        Self {
            inner,
            record: Vec::new(),
        }
    }
}

impl<C: OutcomeChooser> OutcomeChooser for RecordingChooser<C> {
    fn choose(&mut self, probabilities: &[f64]) -> usize {
        let i = self.inner.choose(probabilities);
        self.record.push(i);
        i
    }
}
