/// (a|2): 0 for even a, +1 for a = ±1 mod 8, -1 for a = ±3 mod 8.
pub fn kronecker_two(a: i128) -> i32 {
    match a.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// Jacobi symbol (a|n) for odd n > 0.
fn jacobi(a: i128, n: i128) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Full Kronecker symbol (a|n), multiplicative in both arguments.
pub fn kronecker(a: i128, n: i128) -> i32 {
    if n == 0 {
        return i32::from(a == 1 || a == -1);
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        let two = kronecker_two(a);
        if two == 0 {
            return 0;
        }
        if v % 2 == 1 {
            result *= two;
        }
        n >>= v;
    }
    result * jacobi(a, n)
}
