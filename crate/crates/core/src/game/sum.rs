use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{Game, Player};
use crate::nimber::Nimber;
use crate::superstar::{StarValue, Superstar};

/// A ruleset position that can serve as one component of a disjunctive sum.
///
/// Implementors enumerate the components reachable in one move; a result of
/// `Component::Nimber(Nimber(0))` means the component is exhausted.
pub trait MoveEnumerable: fmt::Debug + Send + Sync {
    fn options(&self, player: Player) -> Vec<Component>;

    /// Canonical text identifying the position; equal keys must mean equal positions.
    fn key(&self) -> String;
}

/// An opaque ruleset component, optionally conjugated.
#[derive(Clone)]
pub struct RulesetComponent {
    game: Arc<dyn MoveEnumerable>,
    key: Arc<str>,
    negated: bool,
}

impl RulesetComponent {
    pub fn new(game: Arc<dyn MoveEnumerable>) -> RulesetComponent {
        let key = game.key().into();
        RulesetComponent { game, key, negated: false }
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    pub fn negate(&self) -> RulesetComponent {
        RulesetComponent { negated: !self.negated, ..self.clone() }
    }

    pub fn options(&self, player: Player) -> Vec<Component> {
        if self.negated {
            self.game.options(player.opponent()).iter().map(Component::negate).collect()
        } else {
            self.game.options(player)
        }
    }
}

impl PartialEq for RulesetComponent {
    fn eq(&self, other: &Self) -> bool {
        self.negated == other.negated && self.key == other.key
    }
}

impl Eq for RulesetComponent {}

impl Ord for RulesetComponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.negated, &self.key).cmp(&(other.negated, &other.key))
    }
}

impl PartialOrd for RulesetComponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for RulesetComponent {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.negated.hash(state);
        self.key.hash(state);
    }
}

impl fmt::Debug for RulesetComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ruleset({self})")
    }
}

impl fmt::Display for RulesetComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-<{}>", self.key)
        } else {
            write!(f, "<{}>", self.key)
        }
    }
}

/// One summand of a [`SumPosition`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    Nimber(Nimber),
    Superstar(Arc<Superstar>),
    Tree(Game),
    Ruleset(RulesetComponent),
}

impl Component {
    /// Wraps a tree, collapsing literal nimber trees to [`Component::Nimber`].
    pub fn from_game(g: Game) -> Component {
        match g.as_nimber() {
            Some(n) => Component::Nimber(n),
            None => Component::Tree(g),
        }
    }

    pub fn ruleset(game: impl MoveEnumerable + 'static) -> Component {
        Component::Ruleset(RulesetComponent::new(Arc::new(game)))
    }

    pub fn options(&self, player: Player) -> Vec<Component> {
        match self {
            Component::Nimber(n) => n.options().map(Component::Nimber).collect(),
            Component::Superstar(s) => s.side(player).iter().map(|&i| Component::Nimber(Nimber(i))).collect(),
            Component::Tree(g) => g.options(player).iter().cloned().map(Component::from_game).collect(),
            Component::Ruleset(r) => r.options(player),
        }
    }

    pub fn negate(&self) -> Component {
        match self {
            Component::Nimber(n) => Component::Nimber(*n),
            Component::Superstar(s) => Component::Superstar(Arc::new(s.negate())),
            Component::Tree(g) => Component::Tree(g.negate()),
            Component::Ruleset(r) => Component::Ruleset(r.negate()),
        }
    }

    /// True when neither player has a move here.
    pub fn is_dead(&self) -> bool {
        match self {
            Component::Nimber(n) => n.is_zero(),
            Component::Superstar(_) => false,
            Component::Tree(g) => g.is_zero(),
            Component::Ruleset(r) => r.options(Player::Left).is_empty() && r.options(Player::Right).is_empty(),
        }
    }

    pub fn as_nimber(&self) -> Option<Nimber> {
        match self {
            Component::Nimber(n) => Some(*n),
            _ => None,
        }
    }

    /// Explicit game tree of this component. Ruleset components are expanded
    /// through their move enumeration.
    pub fn to_game(&self) -> Game {
        match self {
            Component::Nimber(n) => Game::nimber(n.0),
            Component::Superstar(s) => s.to_game(),
            Component::Tree(g) => g.clone(),
            Component::Ruleset(r) => Game::new(
                r.options(Player::Left).iter().map(Component::to_game),
                r.options(Player::Right).iter().map(Component::to_game),
            ),
        }
    }
}

impl From<Nimber> for Component {
    fn from(n: Nimber) -> Component {
        Component::Nimber(n)
    }
}

impl From<Superstar> for Component {
    fn from(s: Superstar) -> Component {
        Component::Superstar(Arc::new(s))
    }
}

impl From<StarValue> for Component {
    fn from(v: StarValue) -> Component {
        match v {
            StarValue::Nimber(n) => Component::Nimber(n),
            StarValue::Star(s) => Component::from(s),
        }
    }
}

impl From<Game> for Component {
    fn from(g: Game) -> Component {
        Component::Tree(g)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Nimber(n) => n.fmt(f),
            Component::Superstar(s) => s.fmt(f),
            Component::Tree(g) => g.fmt(f),
            Component::Ruleset(r) => r.fmt(f),
        }
    }
}

/// A disjunctive sum. Components keep their construction order for display;
/// the solver treats them as a multiset.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SumPosition {
    components: Vec<Component>,
}

impl SumPosition {
    pub fn new(components: impl IntoIterator<Item = Component>) -> SumPosition {
        SumPosition { components: components.into_iter().collect() }
    }

    pub fn zero() -> SumPosition {
        SumPosition::default()
    }

    pub fn of_nimbers(values: impl IntoIterator<Item = u64>) -> SumPosition {
        SumPosition::new(values.into_iter().map(|v| Component::Nimber(Nimber(v))))
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Component> {
        self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn push(&mut self, c: impl Into<Component>) {
        self.components.push(c.into());
    }

    pub fn with(mut self, c: impl Into<Component>) -> SumPosition {
        self.push(c);
        self
    }

    /// `self + other`
    pub fn plus(&self, other: &SumPosition) -> SumPosition {
        SumPosition::new(self.components.iter().chain(&other.components).cloned())
    }

    pub fn negate(&self) -> SumPosition {
        SumPosition::new(self.components.iter().map(Component::negate))
    }

    pub fn all_nimbers(&self) -> bool {
        self.components.iter().all(|c| matches!(c, Component::Nimber(_)))
    }

    /// The position after replacing component `index` by `to`.
    pub fn after_move(&self, index: usize, to: Component) -> SumPosition {
        let mut components = self.components.clone();
        components[index] = to;
        components.retain(|c| !c.is_dead());
        SumPosition { components }
    }

    /// All single moves for `player`, as (component index, resulting component).
    pub fn moves(&self, player: Player) -> Vec<(usize, Component)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.options(player).into_iter().map(move |o| (i, o)))
            .collect()
    }
}

impl FromIterator<Component> for SumPosition {
    fn from_iter<I: IntoIterator<Item = Component>>(iter: I) -> SumPosition {
        SumPosition::new(iter)
    }
}

impl fmt::Display for SumPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            c.fmt(f)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SumPosition {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<SumPosition> {
        super::text::parse_sum(s)
    }
}
