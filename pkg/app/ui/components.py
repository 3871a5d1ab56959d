import streamlit as st

from app.services.algebra import AlgebraElement
from app.services.eliminant import VerificationReport
from app.utils.formatters import checks_frame, curves_frame, format_element, highlight_html


def render_element_card(title: str, element: AlgebraElement):
    """Render a card showing the normal form of an element.

    Args:
        title: Card heading, e.g. "P"
        element: The element to display
    """
    order = "-" if element.order is None else element.order
    st.markdown(f"""
    <div class="element-card">
        <strong>{title}</strong> <span>(order {order}, q = {element.q})</span><br>
        <div class="code-block">{highlight_html(format_element(element))}</div>
    </div>
    """, unsafe_allow_html=True)


def render_check_badge(name: str, value) -> None:
    if value is None:
        st.markdown(f"- {name}: n/a")
        return
    css = "check-pass" if value else "check-fail"
    st.markdown(f'- {name}: <span class="{css}">{"pass" if value else "fail"}</span>', unsafe_allow_html=True)


def render_report(report: VerificationReport):
    """Render a verification report with its check table and curve residuals."""
    cs = report.curves
    if report.passed:
        st.success(f"All checks passed (m={cs.m}, n={cs.n}, s={cs.s}, t={cs.t})")
    else:
        st.error(f"Failed checks: {', '.join(report.failed_checks())}")

    col1, col2 = st.columns(2)
    with col1:
        st.subheader("Checks")
        for name, value in report.checks.items():
            render_check_badge(name, value)
    with col2:
        st.subheader("Summary")
        st.dataframe(checks_frame(report), hide_index=True)
        if report.q_degree is not None:
            st.markdown(f"**q-degree:** {report.q_degree} (bound {report.q_degree_bound})")

    st.subheader("Curves")
    st.dataframe(curves_frame(report), hide_index=True, use_container_width=True)
