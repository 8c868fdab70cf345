package headfirst.state;

public class NoQuarterState implements State {
    private final GumballMachine gumballMachine;

    public NoQuarterState(GumballMachine gumballMachine) {
        this.gumballMachine = gumballMachine;
    }

    @Override
    public void insertQuarter() {
        System.out.println("You inserted a quarter");
    }

    @Override
    public void ejectQuarter() {
        System.out.println("ejecting");
    }

    @Override
    public void turnCrank() {
        gumballMachine.setState(gumballMachine.getHasQuarterState());
    }

    @Override
    public void dispense() {
        gumballMachine.releaseBall();
    }
}
