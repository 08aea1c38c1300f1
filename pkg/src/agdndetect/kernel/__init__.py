from .gaussian import TAIL_CLAMP, q_function, semi_g_lower_cdf, semi_g_upper_cdf

__all__ = ["TAIL_CLAMP", "q_function", "semi_g_lower_cdf", "semi_g_upper_cdf"]
