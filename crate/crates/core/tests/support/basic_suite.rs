//! Exhaustive checks of the basic-word family of one residue class.
//! Each check returns the first violated statement.

use cyclogaps_core::basicwords::{alternation_report, is_prime, ResidueClass};
use cyclogaps_core::words::TernaryWord;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Every class `(p, r)` with `p` an odd prime `<= p_max` and `1 <= r < p`.
pub fn classes(p_max: usize) -> Vec<ResidueClass> {
    (3..=p_max)
        .filter(|&p| is_prime(p as u64))
        .flat_map(|p| (1..p).map(move |r| ResidueClass::new(p as i64, r as i64).unwrap()))
        .collect()
}

pub fn check_all(p_max: usize) -> Result<usize, String> {
    let classes = classes(p_max);
    for class in &classes {
        check_class(class).map_err(|e| format!("(p, r) = ({}, {}): {e}", class.p(), class.r()))?;
    }
    Ok(classes.len())
}

pub fn check_class(class: &ResidueClass) -> Check {
    let (p, r) = (class.p(), class.r());
    let (up, um) = (class.u_plus(), class.u_minus());
    let family = class.family();

    ensure!(up + um == p, "u+ + u- = {} != p", up + um);
    ensure!((up * r) % p == 1, "u+ is not the inverse of r");

    // rotations
    let mut d = "+-"
        .parse::<TernaryWord>()
        .unwrap()
        .concat(&TernaryWord::zeros(p - 2));
    for i in 0..p {
        ensure!(family.d(i) == &d, "d[{i}] differs from the rotation");
        ensure!(class.d_word(i).unwrap() == d, "closed-form d[{i}] differs");
        d = d.rotate_left(r).unwrap();
    }

    // one +1 and one -1 per column, at I+ and I-
    for j in 0..p {
        let plus: Vec<usize> = (0..p).filter(|&i| family.d(i).letters()[j] == 1).collect();
        let minus: Vec<usize> = (0..p).filter(|&i| family.d(i).letters()[j] == -1).collect();
        let (ip, im) = (class.index_plus(j).unwrap(), class.index_minus(j).unwrap());
        ensure!(plus == [ip], "column {j}: +1 rows {plus:?}, I+ = {ip}");
        ensure!(minus == [im], "column {j}: -1 rows {minus:?}, I- = {im}");
        ensure!(im == (ip + up) % p, "I-({j}) != I+({j}) + u+ mod p");
    }

    // cumulative construction against the closed form and the indicator form
    let mut cumulative = TernaryWord::zeros(p);
    for i in 0..p {
        cumulative = cumulative.add(family.d(i)).map_err(|e| e.to_string())?;
        let omega = family.omega(i);
        ensure!(
            omega == &cumulative,
            "omega[{i}] is not d[0] + ... + d[{i}]"
        );
        let sums = omega.partial_sums();
        for (j, &sum) in sums.iter().enumerate() {
            ensure!(
                class.omega_letter(i, j).unwrap() == omega.letters()[j],
                "closed-form omega[{i}][{j}] differs"
            );
            let in_a = class.index_plus(j).unwrap() <= i;
            let in_b = up <= i;
            let indicator = in_a as i64 - in_b as i64;
            ensure!(
                sum == indicator,
                "S({i}, {j}) = {sum} != 1_A - 1_B = {indicator}"
            );
            ensure!(class.s_map(i, j).unwrap() == sum, "s_map({i}, {j}) differs");
        }
        ensure!(sums[p - 1] == 0, "S({i}, p-1) != 0");
        if i + 1 < p {
            ensure!(!omega.is_zero(), "omega[{i}] is zero");
            let allowed: &[i64] = if i < up { &[0, 1] } else { &[-1, 0] };
            ensure!(
                sums.iter().all(|s| allowed.contains(s)),
                "partial sums of omega[{i}] leave {allowed:?}"
            );
        }
    }
    ensure!(family.omega(p - 1).is_zero(), "omega[p-1] is not zero");

    check_index_table(class)?;
    check_letter_table(class)?;
    check_fractional_nonzero(class)?;
    if p >= 5 && (2..=p - 2).contains(&r) {
        check_alternation(class)?;
        check_letter_positions(class)?;
        check_first_words_and_gaps(class)?;
    }
    Ok(())
}

/// Particular values of I+ and I-, every entry reduced mod p.
fn check_index_table(class: &ResidueClass) -> Check {
    let (p, r, up, um) = (class.p(), class.r(), class.u_plus(), class.u_minus());
    let ip = |j: usize| class.index_plus(j % p).unwrap();
    let im = |j: usize| class.index_minus(j % p).unwrap();
    let rows = [
        ("I+(0)", ip(0), 0),
        ("I+(1)", ip(1), um),
        ("I+(r-1)", ip(r - 1), up - 1),
        ("I+(r)", ip(r), p - 1),
        ("I+(p-r)", ip(p - r), 1),
        ("I+(p-r+1)", ip(p - r + 1), (1 + um) % p),
        ("I+(p-1)", ip(p - 1), up),
        ("I-(0)", im(0), up),
        ("I-(1)", im(1), 0),
        ("I-(r-1)", im(r - 1), (2 * up + p - 1) % p),
        ("I-(r)", im(r), up - 1),
        ("I-(p-r)", im(p - r), (1 + up) % p),
        ("I-(p-r+1)", im(p - r + 1), 1),
        ("I-(p-1)", im(p - 1), (2 * up) % p),
    ];
    for (name, got, want) in rows {
        ensure!(got == want, "{name} = {got}, expected {want}");
    }
    Ok(())
}

/// Letters of ω_i at special columns, under their side conditions.
fn check_letter_table(class: &ResidueClass) -> Check {
    let (p, r, up, um) = (class.p(), class.r(), class.u_plus(), class.u_minus());
    let family = class.family();
    let at = |i: usize, j: usize| family.omega(i).letters()[j];
    for i in 0..up {
        ensure!(at(i, 0) == 1, "omega[{i}][0] != 1");
    }
    for i in up..p {
        ensure!(at(i, 0) == 0, "omega[{i}][0] != 0");
    }
    for i in 0..um {
        ensure!(at(i, 1) == -1, "omega[{i}][1] != -1");
    }
    if up <= (p - 1) / 2 {
        ensure!(at(up - 1, r - 1) == 1, "omega[u+-1][r-1] != 1");
    }
    for i in up - 1..p - 1 {
        ensure!(at(i, r) == -1, "omega[{i}][r] != -1");
    }
    if r != p - 1 {
        for i in 1..1 + up {
            ensure!(at(i, p - r) == 1, "omega[{i}][p-r] != 1");
        }
    }
    if r >= 2 {
        for i in 1..1 + um {
            ensure!(at(i, p - r + 1) == -1, "omega[{i}][p-r+1] != -1");
        }
    }
    Ok(())
}

fn check_fractional_nonzero(class: &ResidueClass) -> Check {
    let (p, r) = (class.p(), class.r());
    let family = class.family();
    if r >= 2 {
        for i in 0..class.u_plus().max(class.u_minus()) {
            let prefix = family.omega(i).fractional_power(r).unwrap();
            ensure!(!prefix.is_zero(), "omega[{i}]^(r/p) is zero");
        }
    } else {
        for i in 1..=p - 2 {
            let prefix = family.omega(i).fractional_power(1).unwrap();
            ensure!(prefix.is_zero(), "omega[{i}]^(1/p) is nonzero");
        }
    }
    Ok(())
}

fn last_nonzero(word: &TernaryWord) -> Option<i8> {
    word.letters().iter().rev().copied().find(|&l| l != 0)
}

fn check_alternation(class: &ResidueClass) -> Check {
    let (p, r, up, um) = (class.p(), class.r(), class.u_plus(), class.u_minus());
    let family = class.family();
    for i in 0..=p - 2 {
        let report = alternation_report(family.omega(i)).map_err(|e| e.to_string())?;
        ensure!(report.alternates, "omega[{i}] does not alternate");
        if i < up {
            ensure!(
                (report.first_sign, report.last_sign) == (1, -1),
                "omega[{i}] signs {:?}",
                (report.first_sign, report.last_sign)
            );
        } else if up < um && i < um {
            ensure!(
                (report.first_sign, report.last_sign) == (-1, 1),
                "omega[{i}] signs {:?}",
                (report.first_sign, report.last_sign)
            );
        }
    }
    for i in 0..up.saturating_sub(1) {
        let prefix = family.omega(i).fractional_power(r).unwrap();
        ensure!(
            last_nonzero(&prefix) == Some(-1),
            "omega[{i}]^(r/p) does not end in -1"
        );
    }
    if up < um {
        for i in up - 1..um {
            let prefix = family.omega(i).fractional_power(r).unwrap();
            ensure!(
                last_nonzero(&prefix) == Some(1),
                "omega[{i}]^(r/p) does not end in +1"
            );
        }
    }
    Ok(())
}

fn check_letter_positions(class: &ResidueClass) -> Check {
    let (p, r, up, um) = (class.p(), class.r(), class.u_plus(), class.u_minus());
    let family = class.family();
    let exists = |i: usize, offset: usize, range: std::ops::RangeInclusive<usize>, letter: i8| {
        range
            .into_iter()
            .any(|l| family.omega(i).letters()[offset + l] == letter)
    };
    for i in 1..up {
        let w = family.omega(i).letters();
        ensure!(
            w[0] == 1 && w[p - r] == 1,
            "omega[{i}][0], [p-r] not both 1"
        );
        ensure!(
            exists(i, 0, 1..=p - r - 1, -1),
            "omega[{i}]: no -1 in [1, p-r-1]"
        );
        ensure!(
            exists(i, p - r, 1..=r - 1, -1),
            "omega[{i}]: no -1 in [p-r+1, p-1]"
        );
        if i + 1 < up {
            ensure!(exists(i, 0, 1..=r - 1, -1), "omega[{i}]: no -1 in [1, r-1]");
        }
    }
    if up < um {
        ensure!(r >= 3, "u+ < u- with r < 3");
        for i in up..um {
            let w = family.omega(i).letters();
            ensure!(w[0] == 0, "omega[{i}][0] != 0");
            ensure!(
                w[1] == -1 && w[p - r + 1] == -1,
                "omega[{i}][1], [p-r+1] not both -1"
            );
            ensure!(
                exists(i, 1, 1..=p - r - 1, 1),
                "omega[{i}]: no 1 in [2, p-r]"
            );
            ensure!(
                exists(i, p - r + 1, 1..=r - 2, 1),
                "omega[{i}]: no 1 after p-r+1"
            );
            ensure!(exists(i, 1, 1..=r - 2, 1), "omega[{i}]: no 1 in [2, r-1]");
        }
    }
    Ok(())
}

fn word_g1(word: &TernaryWord) -> usize {
    word.gapset().ok().and_then(|g| g.g1()).unwrap_or(1)
}

fn check_first_words_and_gaps(class: &ResidueClass) -> Check {
    let (p, r, up, um) = (class.p(), class.r(), class.u_plus(), class.u_minus());
    let family = class.family();
    let text = |s: String| s.parse::<TernaryWord>().unwrap();
    let omega0 = text(format!("+-{}", "0".repeat(p - 2)));
    let omega1 = text(format!(
        "+-{}+-{}",
        "0".repeat(p - r - 2),
        "0".repeat(r - 2)
    ));
    ensure!(family.omega(0) == &omega0, "omega[0] = {}", family.omega(0));
    ensure!(family.omega(1) == &omega1, "omega[1] = {}", family.omega(1));
    for i in 2..up {
        let bound = (p - r - 1).max(r - 1);
        let g = word_g1(family.omega(i));
        ensure!(g <= bound, "g1(omega[{i}]) = {g} > {bound}");
    }
    if up < um {
        for i in up..um {
            let bound = 2.max(p - r - 1).max(r - 2);
            let g = word_g1(family.omega(i));
            ensure!(g <= bound, "g1(omega[{i}]) = {g} > {bound}");
        }
    }
    Ok(())
}
