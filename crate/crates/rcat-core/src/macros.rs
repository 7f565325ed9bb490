/// `comp!(cat; h, g, f)` is `h ∘ g ∘ f`.
macro_rules! comp {
    ($cat:expr; $f:expr) => { ($f).clone() };
    ($cat:expr; $g:expr, $($rest:expr),+) => {
        $cat.compose(&$g, &comp!($cat; $($rest),+))
    };
}

/// Record a violation and return the report early unless all violations
/// were requested.
macro_rules! ensure_law {
    ($ck:expr, $cond:expr, $law:expr, $wit:expr) => {
        if !$cond {
            if $ck.fail($law, $wit) {
                return $ck.finish();
            }
        } else {
            $ck.tick();
        }
    };
}

/// `ensure_law!` inside functions returning `Result<LawReport>`.
macro_rules! ensure_law_ok {
    ($ck:expr, $cond:expr, $law:expr, $wit:expr) => {
        if !$cond {
            if $ck.fail($law, $wit) {
                return Ok($ck.finish());
            }
        } else {
            $ck.tick();
        }
    };
}
