//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! with its wall time against the limit, and exits non-zero on any failure.

use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superstars::blackout::{gf2_solve, solve as solve_blackout, BlackoutSolveConfig, Side};
use superstars::epmx::{solve as solve_epmx, EpmxDocument, EpmxInstance, EpmxSolveConfig, Owner};
use superstars::families;
use superstars::game::text::{format_star_sum, parse_star_sum};
use superstars::nimber::nim_sum;
use superstars::paintcan::{position_as_ruleset, position_value, stack_to_superstar, PaintCanPosition};
use superstars::reductions::{
    epmx_to_superstars, oracle_has_exact_cover, oracle_min_cover, oracle_sat, setcover_to_pure, superstars_to_comets,
    threesat_to_epmx, CnfInstance, SetCoverInstance,
};
use superstars::superstar::{comet_of, zero_game_win_move};
use superstars::{
    Exec, Nimber, OutcomeClass, Player, Solver, SolverConfig, StarValue, SumPosition, Superstar, SuperstarClass,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sum_of(values: &[StarValue]) -> SumPosition {
    SumPosition::new(values.iter().cloned().map(Into::into))
}

// 1 -------------------------------------------------------------------------

const FOUR_CLAUSE: &str = include_str!("fixtures/epmx_four_clause.json");

fn four_clause_text() -> Outcome {
    let inst = EpmxDocument::from_json(FOUR_CLAUSE).and_then(|d| d.instance()).map_err(err)?;
    let text = epmx_to_superstars(&inst).map_err(err)?.to_string();
    let expected = "{*1,*2,*16|0}+{*4,*7,*32|0}+{0|*1,*2}+{0|*8,*9,*10}+*15";
    ensure(text == expected, || format!("got {text}, want {expected}"))?;
    Ok(text)
}

// 2 -------------------------------------------------------------------------

fn figure_fidelity() -> Outcome {
    let figures = [("BRGYB/GGGG", "{0,*2,*4|*1,*2}+*4"), ("GBR/YYBR/BGB", "{0,*1|0,*2}+{*2|*3}+{0,*1,*2|*1}")];
    let mut brute = Solver::new(SolverConfig::brute_force());
    for (stacks, caption) in figures {
        let pos: PaintCanPosition = stacks.parse().map_err(err)?;
        let values: Vec<StarValue> = pos.stacks().iter().map(stack_to_superstar).collect();
        let text = format_star_sum(&values);
        ensure(text == caption, || format!("{stacks}: {text} != {caption}"))?;
        ensure(position_value(&pos).to_string() == caption, || format!("{stacks}: position value differs"))?;
        let expected = sum_of(&parse_star_sum(caption).map_err(err)?);
        let played = position_as_ruleset(&pos);
        ensure(brute.equals(&played, &expected).map_err(err)?, || format!("{stacks} is not equal to {caption}"))?;
    }
    Ok("both figures match their captions".into())
}

// 3 -------------------------------------------------------------------------

fn simplify_sweep() -> Outcome {
    let mut solver = Solver::default();
    let (mut fired, mut total) = (0, 0);
    for l in 0u32..32 {
        for r in 0u32..32 {
            let side = |m: u32| (0..5u64).filter(move |i| m >> i & 1 == 1);
            let Ok(s) = Superstar::new(side(l), side(r)) else { continue };
            total += 1;
            let g = SumPosition::zero().with(s.clone());
            let equal_to: Vec<u64> =
                (0..=5).filter(|&n| solver.is_equal_to_nimber(&g, Nimber(n)).expect("small")).collect();
            match s.simplify() {
                Some(n) => {
                    fired += 1;
                    ensure(equal_to == [n.0], || format!("{s} simplifies to {n} but equals {equal_to:?}"))?;
                }
                None => ensure(equal_to.is_empty(), || format!("{s} does not simplify but equals {equal_to:?}"))?,
            }
        }
    }
    Ok(format!("{total} superstars, simplify fired on {fired}, all confirmed"))
}

// 4 -------------------------------------------------------------------------

fn no_zero_corollary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut solver = Solver::default();
    for _ in 0..500 {
        let s = families::random_no0_superstar(&mut rng, 6);
        let g = SumPosition::zero().with(s.clone());
        let o = solver.outcome(&g).map_err(err)?;
        ensure(o == OutcomeClass::P, || format!("{s} has outcome {o}"))?;
        for k in 0..=4 {
            let with_k = solver.outcome(&g.clone().with(Nimber(k))).map_err(err)?;
            let bare = solver.outcome(&SumPosition::of_nimbers([k])).map_err(err)?;
            ensure(with_k == bare, || format!("{s}+*{k} is {with_k}, *{k} is {bare}"))?;
        }
    }
    Ok("500 No0 superstars are P and transparent to *0..*4".into())
}

// 5 -------------------------------------------------------------------------

/// Plays the strategy for `mover` against every reply. Positions are kept
/// sorted with exhausted components dropped, and memoized.
struct Playout {
    memo: HashMap<(Vec<StarValue>, Player), bool>,
    lines: u64,
}

impl Playout {
    fn canon(mut sum: Vec<StarValue>) -> Vec<StarValue> {
        sum.retain(|v| v.as_nimber() != Some(Nimber(0)));
        sum.sort();
        sum
    }

    fn strategy_wins(&mut self, sum: Vec<StarValue>, mover: Player) -> Result<bool, String> {
        let key = (sum, mover);
        if let Some(&w) = self.memo.get(&key) {
            return Ok(w);
        }
        let (sum, _) = &key;
        let mv = zero_game_win_move(sum, mover).map_err(|e| format!("{}: {e}", format_star_sum(sum)))?;
        ensure(sum[mv.component].side(mover).contains(&mv.to.0), || format!("illegal strategy move {mv:?}"))?;
        let mut after = sum.clone();
        after[mv.component] = StarValue::Nimber(mv.to);
        let after = Self::canon(after);
        let mut wins = true;
        'replies: for i in 0..after.len() {
            for to in after[i].side(mover.opponent()) {
                let mut next = after.clone();
                next[i] = StarValue::Nimber(Nimber(to));
                let next = Self::canon(next);
                self.lines += 1;
                // The opponent moved last and the mover has nothing left.
                if next.is_empty() || !self.strategy_wins(next, mover)? {
                    wins = false;
                    break 'replies;
                }
            }
        }
        self.memo.insert(key, wins);
        Ok(wins)
    }
}

/// Nimbers `*1..=*max` and every No0, Left0 and Right0 superstar whose
/// options are drawn from `0..=max` with at most `max_side` per side.
fn lemma_pool(max: u64, max_side: u32) -> Vec<StarValue> {
    let mut pool: Vec<StarValue> = (1..=max).map(|n| StarValue::Nimber(Nimber(n))).collect();
    for l in 0u32..1 << (max + 1) {
        for r in 0u32..1 << (max + 1) {
            if l.count_ones() > max_side || r.count_ones() > max_side {
                continue;
            }
            let side = |m: u32| (0..=max).filter(move |i| m >> i & 1 == 1);
            let Ok(s) = Superstar::new(side(l), side(r)) else { continue };
            if matches!(s.classify(), SuperstarClass::No0 | SuperstarClass::Left0 | SuperstarClass::Right0) {
                pool.push(StarValue::Star(s));
            }
        }
    }
    pool
}

fn lemma_applies(sum: &[StarValue], mover: Player) -> bool {
    let own = if mover == Player::Left { SuperstarClass::Left0 } else { SuperstarClass::Right0 };
    let theirs = if mover == Player::Left { SuperstarClass::Right0 } else { SuperstarClass::Left0 };
    let count = |c| sum.iter().filter(|v| v.classify() == c).count();
    count(own) > count(theirs)
}

fn multisets(
    pool: &[StarValue],
    max_len: usize,
    visit: &mut impl FnMut(&[StarValue]) -> Result<(), String>,
) -> Result<(), String> {
    fn go(
        pool: &[StarValue],
        from: usize,
        left: usize,
        pick: &mut Vec<StarValue>,
        visit: &mut impl FnMut(&[StarValue]) -> Result<(), String>,
    ) -> Result<(), String> {
        if !pick.is_empty() {
            visit(pick)?;
        }
        if left == 0 {
            return Ok(());
        }
        for i in from..pool.len() {
            pick.push(pool[i].clone());
            go(pool, i, left - 1, pick, visit)?;
            pick.pop();
        }
        Ok(())
    }
    go(pool, 0, max_len, &mut Vec::new(), visit)
}

fn zero_game_win() -> Outcome {
    let mut play = Playout { memo: HashMap::new(), lines: 0 };
    let mut tiers = Vec::new();
    // (max index, max options per side, max components)
    for (max, max_side, len) in [(2, 3, 4), (5, 1, 4), (3, 4, 3), (5, 2, 3), (5, 6, 2)] {
        let pool = lemma_pool(max, max_side);
        let mut sums = 0u64;
        multisets(&pool, len, &mut |sum| {
            for mover in [Player::Left, Player::Right] {
                if lemma_applies(sum, mover) {
                    sums += 1;
                    let canon = Playout::canon(sum.to_vec());
                    ensure(play.strategy_wins(canon, mover)?, || format!("{mover} loses {}", format_star_sum(sum)))?;
                }
            }
            Ok(())
        })?;
        tiers.push(format!("idx<={max}/side<={max_side}/len<={len}: {sums}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut solver = Solver::default();
    let mut random = 0;
    while random < 1000 {
        let len = rng.gen_range(1..=5);
        let sum: Vec<StarValue> = (0..len)
            .map(|_| match rng.gen_range(0..4) {
                0 => StarValue::Nimber(Nimber(rng.gen_range(0..=7))),
                1 => StarValue::Star(families::random_superstar_of_class(&mut rng, SuperstarClass::No0, 7)),
                2 => StarValue::Star(families::random_superstar_of_class(&mut rng, SuperstarClass::Left0, 7)),
                _ => StarValue::Star(families::random_superstar_of_class(&mut rng, SuperstarClass::Right0, 7)),
            })
            .collect();
        for mover in [Player::Left, Player::Right] {
            if !lemma_applies(&sum, mover) {
                continue;
            }
            random += 1;
            zero_game_win_move(&sum, mover).map_err(err)?;
            let wins = solver.wins_moving_first(&sum_of(&sum), mover).map_err(err)?;
            ensure(wins, || format!("solver says {mover} loses {}", format_star_sum(&sum)))?;
        }
    }
    Ok(format!("sums per tier [{}], {} reply lines; {random} random sums agree", tiers.join(", "), play.lines))
}

// 6 and 7 -------------------------------------------------------------------

struct ChainResult {
    sat: bool,
    x_first: bool,
    outcome: OutcomeClass,
}

fn chain(cnf: &CnfInstance) -> Result<ChainResult, String> {
    let sat = oracle_sat(cnf).map_err(err)?.is_some();
    let epmx = threesat_to_epmx(cnf).map_err(err)?.instance;
    let config = EpmxSolveConfig { exec: Exec::Sequential, ..EpmxSolveConfig::default() };
    let x_first = solve_epmx(&epmx, Owner::X, config).map_err(err)?.winner == Owner::X;
    let stars = epmx_to_superstars(&epmx).map_err(err)?;
    let outcome = Solver::default().outcome(&stars.to_sum()).map_err(err)?;
    Ok(ChainResult { sat, x_first, outcome })
}

fn criterion6_family() -> (Vec<CnfInstance>, Vec<CnfInstance>) {
    let exhaustive = families::restricted_cnfs(3, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let random = (0..200).map(|_| families::random_restricted_cnf(&mut rng, 4, 4)).collect();
    (exhaustive, random)
}

fn hardness_chain() -> Outcome {
    let (exhaustive, random) = criterion6_family();
    let all: Vec<CnfInstance> = exhaustive.iter().chain(&random).cloned().collect();
    let results = Exec::default().try_map(&all, |cnf| chain(cnf).map(|r| (cnf.clone(), r)))?;
    let mut sat_count = 0;
    for (cnf, r) in &results {
        sat_count += usize::from(r.sat);
        let left_second = r.outcome.wins_going_second(Player::Left);
        ensure(r.sat == r.x_first && r.x_first == left_second, || {
            format!(
                "{}: sat {}, X first {}, outcome {}",
                cnf.to_dimacs().replace('\n', " "),
                r.sat,
                r.x_first,
                r.outcome
            )
        })?;
    }
    Ok(format!("{} exhaustive + {} random instances ({sat_count} satisfiable) agree", exhaustive.len(), random.len()))
}

fn comet_check(cnf: &CnfInstance, expand: bool) -> Result<(), String> {
    let epmx: EpmxInstance = threesat_to_epmx(cnf).map_err(err)?.instance;
    let stars = epmx_to_superstars(&epmx).map_err(err)?;
    let values = stars.values();
    let comets = superstars_to_comets(&values).map_err(err)?;
    ensure(comets.is_bare(), || format!("{comets} does not cancel"))?;
    if expand {
        let mut expanded = SumPosition::zero();
        for v in &values {
            for c in comet_of(v).map_err(err)?.to_sum().into_components() {
                expanded.push(c);
            }
        }
        let mut solver = Solver::default();
        let a = solver.outcome(&expanded).map_err(err)?;
        let b = solver.outcome(&stars.to_sum()).map_err(err)?;
        ensure(a == b, || format!("expanded comets {a}, plain sum {b}"))?;
    }
    Ok(())
}

fn comet_corollary() -> Outcome {
    let (exhaustive, random) = criterion6_family();
    Exec::default().try_map(&exhaustive, |cnf| comet_check(cnf, true))?;
    Exec::default().try_map(&random, |cnf| comet_check(cnf, false))?;
    Ok(format!("{} expanded and {} more cancel", exhaustive.len(), random.len()))
}

// 8 -------------------------------------------------------------------------

fn blackout_theorem() -> Outcome {
    let family = families::pure_setcover_instances(4, 4);
    let config = BlackoutSolveConfig { exec: Exec::Sequential, ..BlackoutSolveConfig::default() };
    let verdicts = Exec::default().try_map(&family, |sc| -> Result<(bool, bool), String> {
        let pos = superstars::reductions::pure_setcover_to_blackout(sc).map_err(err)?;
        let all_off = solve_blackout(&pos, config).map_err(err)?.winner == Side::AllOff;
        let cover = oracle_min_cover(sc).map_err(err)?.is_some_and(|c| c <= sc.k());
        Ok((all_off, cover))
    })?;
    for (sc, (all_off, cover)) in family.iter().zip(&verdicts) {
        ensure(all_off == cover, || format!("{}: AllOff wins {all_off}, cover exists {cover}", sc.to_json()))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    while checked < 200 {
        let m = rng.gen_range(3..=8);
        let n = rng.gen_range(1..=6);
        let sc = families::random_three_uniform(&mut rng, m, n, 1);
        let Some(min) = oracle_min_cover(&sc).map_err(err)? else { continue };
        let sc: SetCoverInstance = sc.with_k(min).map_err(err)?;
        let pure = setcover_to_pure(&sc).map_err(err)?;
        ensure(oracle_has_exact_cover(&pure, min).map_err(err)?, || format!("{} loses its exact cover", sc.to_json()))?;
        checked += 1;
    }
    Ok(format!("{} pure instances agree; {checked} enrichments keep an exact cover", family.len()))
}

// 9 -------------------------------------------------------------------------

fn performance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let values = families::random_nimbers(&mut rng, 1_000_000);
    let t = Instant::now();
    let total = nim_sum(values.iter().copied());
    let nim_time = t.elapsed();
    let check = values.iter().fold(0u64, |a, n| a ^ n.0);
    ensure(total.0 == check, || "nim_sum disagrees with a plain fold".into())?;
    ensure(nim_time < Duration::from_millis(100), || format!("nim_sum took {nim_time:?}"))?;

    let (target, rows) = families::random_gf2_system(&mut rng, 512, 512);
    let t = Instant::now();
    let solution = gf2_solve(&target, &rows);
    let gf2_time = t.elapsed();
    if let Some(idx) = &solution {
        let mut acc = superstars::blackout::Bits::zeros(512);
        idx.iter().for_each(|&i| acc.xor_assign(&rows[i]));
        ensure(acc == target, || "gf2_solve returned a wrong combination".into())?;
    }
    ensure(gf2_time < Duration::from_secs(1), || format!("gf2_solve took {gf2_time:?}"))?;

    let g: SumPosition =
        "{0,*2,*4|*1,*2}+{*2,*5|0,*3}+{0,*3|*1,*4}+{*1|0,*2}+{0,*1,*6|*2}+{*3|0}+{*4,*1|*2,0}".parse().map_err(err)?;
    let mut g = g;
    for _ in 0..3 {
        g.push(superstars::Game::up());
    }
    let mut solver = Solver::default();
    let t = Instant::now();
    let first = solver.outcome(&g).map_err(err)?;
    let cold = t.elapsed();
    let t = Instant::now();
    let second = solver.outcome(&g).map_err(err)?;
    let warm = t.elapsed().max(Duration::from_nanos(1));
    ensure(first == second, || "repeated query changed its answer".into())?;
    let ratio = cold.as_secs_f64() / warm.as_secs_f64();
    ensure(ratio >= 100.0, || format!("repeat speedup only {ratio:.1}x ({cold:?} then {warm:?})"))?;
    Ok(format!(
        "nim_sum {nim_time:.2?}, gf2 512x512 {gf2_time:.2?}, repeat query {cold:.2?} -> {warm:.2?} ({ratio:.0}x)"
    ))
}

// ---------------------------------------------------------------------------

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "four-clause EPMX text", limit: Duration::from_secs(1), run: four_clause_text },
    Criterion { id: 2, name: "Paint Can figures", limit: Duration::from_secs(10), run: figure_fidelity },
    Criterion { id: 3, name: "simplify sweep", limit: Duration::from_secs(300), run: simplify_sweep },
    Criterion { id: 4, name: "No0 superstars", limit: Duration::from_secs(300), run: no_zero_corollary },
    Criterion { id: 5, name: "zero game win strategy", limit: Duration::from_secs(600), run: zero_game_win },
    Criterion { id: 6, name: "3SAT / EPMX / superstar chain", limit: Duration::from_secs(900), run: hardness_chain },
    Criterion { id: 7, name: "comet cancellation", limit: Duration::from_secs(600), run: comet_corollary },
    Criterion { id: 8, name: "Blackout vs set cover", limit: Duration::from_secs(900), run: blackout_theorem },
    Criterion { id: 9, name: "performance", limit: Duration::from_secs(60), run: performance },
];

fn main() {
    let filter: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in CRITERIA.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let verdict = match result {
            Ok(detail) if took <= c.limit => Ok(detail),
            Ok(detail) => Err(format!("{detail}; over the time limit")),
            Err(e) => Err(e),
        };
        let (tag, detail) = match verdict {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {}: {tag} [{:.2?} / {:?}] {}: {detail}", c.id, took, c.limit, c.name);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
